#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wedgecalc/composition.hpp"

namespace wedgecalc {

// The two ambient wedges the calculus works in.
//
// classifier: S^{n-1}_1 v S^{n+1}_1 v ... v S^{n-1}_k v S^{n+1}_k.  Fully
// concrete torsion catalog at n = 4; abstract per-sphere atoms for n >= 5.
//
// splitter: K1 v K2 with K1 = pairs (S^{n-1}_i v S^{n+1}_i) plus optional
// opaque 4-cell summands, K2 = S^n_1 v ... v S^n_l.  The top homotopy of K1
// is tracked as opaque buckets; the K2 part and the mixed sector are exact.
enum class Mode { classifier, splitter };

enum class SummandKind { sphere, opaque };

struct Summand {
    int dim = 0;          // sphere only
    int index = 0;        // 1-based among same-dim spheres
    SummandKind kind = SummandKind::sphere;
    std::string label;    // "S3_1", "P1", ...
};

class WedgeShape {
  public:
    static std::shared_ptr<const WedgeShape> classifier(int n, int k);
    static std::shared_ptr<const WedgeShape> splitter(int n, int r, int l,
                                                      std::vector<std::string> opaque_labels = {});

    int n() const { return n_; }
    Mode mode() const { return mode_; }
    const std::vector<Summand>& summands() const { return summands_; }

    // Pair count (classifier: k; splitter: r) and splitter K2 sphere count.
    int pairs() const { return pairs_; }
    int k2_count() const { return k2_; }

    int sphere_count(int dim) const;
    bool has_sphere(int dim, int index) const;

    // Degrees the calculus models for this shape.
    bool degree_supported(int d) const;
    std::vector<int> supported_degrees() const;

    // Splitter bucket test: dims n-1 and n+1 (and opaque summands) are K1.
    bool dim_in_k1(int dim) const;

    // Abstract class registry.  Shapes come with defaults (see factory docs);
    // more atoms can be declared before the shape is frozen behind shared_ptr.
    void declare_atom(AtomDecl decl);
    const AtomDecl* find_atom(const std::string& id) const;
    const std::map<std::string, AtomDecl>& atoms() const { return atoms_; }

    friend bool operator==(const WedgeShape& a, const WedgeShape& b);
    friend std::shared_ptr<WedgeShape> build_classifier(int n, int k);
    friend std::shared_ptr<WedgeShape> build_splitter(int n, int r, int l,
                                                      std::vector<std::string> opaque_labels);

  private:
    WedgeShape() = default;

    int n_ = 4;
    Mode mode_ = Mode::classifier;
    int pairs_ = 0;
    int k2_ = 0;
    std::vector<Summand> summands_;
    std::map<std::string, AtomDecl> atoms_;
};

using ShapePtr = std::shared_ptr<const WedgeShape>;

// Mutable handle for declaring atoms between construction and use.  The
// factories return const shapes; build_* variants return a mutable one.
std::shared_ptr<WedgeShape> build_classifier(int n, int k);
std::shared_ptr<WedgeShape> build_splitter(int n, int r, int l,
                                           std::vector<std::string> opaque_labels = {});

} // namespace wedgecalc
