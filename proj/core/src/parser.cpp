#include "wedgecalc/parser.hpp"

#include <cctype>
#include <utility>
#include <vector>

#include "wedgecalc/errors.hpp"

namespace wedgecalc {

namespace {

struct Tok {
    enum class Kind { ident, number, lparen, rparen, comma, dot, plus, minus, star, semi, arrow, str, end };
    Kind kind = Kind::end;
    std::string text;
    int line = 1;
    int col = 1;
};

std::string tok_name(const Tok& t) {
    switch (t.kind) {
    case Tok::Kind::ident: return "name '" + t.text + "'";
    case Tok::Kind::number: return "integer " + t.text;
    case Tok::Kind::str: return "quoted key";
    case Tok::Kind::arrow: return "'->'";
    case Tok::Kind::end: return "end of input";
    default: return "'" + t.text + "'";
    }
}

std::vector<Tok> lex(const std::string& text) {
    std::vector<Tok> out;
    int line = 1, col = 1;
    size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        const int l = line, c = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Tok::Kind::number, text.substr(i, j - i), l, c});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i + 1;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
                ++j;
            out.push_back({Tok::Kind::ident, text.substr(i, j - i), l, c});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (ch == '"') {
            size_t j = i + 1;
            while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
            if (j >= text.size() || text[j] != '"')
                throw ParseError("unterminated quoted key", l, c, "a closing '\"'");
            out.push_back({Tok::Kind::str, text.substr(i + 1, j - i - 1), l, c});
            col += static_cast<int>(j - i) + 1;
            i = j + 1;
            continue;
        }
        Tok t{Tok::Kind::end, std::string(1, ch), l, c};
        switch (ch) {
        case '(': t.kind = Tok::Kind::lparen; break;
        case ')': t.kind = Tok::Kind::rparen; break;
        case ',': t.kind = Tok::Kind::comma; break;
        case '.': t.kind = Tok::Kind::dot; break;
        case '+': t.kind = Tok::Kind::plus; break;
        case '*': t.kind = Tok::Kind::star; break;
        case ';': t.kind = Tok::Kind::semi; break;
        case '-':
            if (i + 1 < text.size() && text[i + 1] == '>') {
                t.kind = Tok::Kind::arrow;
                t.text = "->";
                ++i;
                ++col;
            } else {
                t.kind = Tok::Kind::minus;
            }
            break;
        default:
            throw ParseError("stray character '" + std::string(1, ch) + "'", l, c, "");
        }
        out.push_back(std::move(t));
        ++col;
        ++i;
    }
    out.push_back({Tok::Kind::end, "", line, col});
    return out;
}

class Parser {
  public:
    Parser(std::vector<Tok> toks, ShapePtr shape)
        : toks_(std::move(toks)), shape_(std::move(shape)) {}

    const Tok& peek(size_t ahead = 0) const {
        const size_t p = pos_ + ahead;
        return p < toks_.size() ? toks_[p] : toks_.back();
    }

    bool accept(Tok::Kind k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }

    Tok expect(Tok::Kind k, const std::string& what) {
        if (peek().kind != k)
            throw ParseError("unexpected " + tok_name(peek()), peek().line, peek().col, what);
        return toks_[pos_++];
    }

    void expect_end() {
        if (peek().kind != Tok::Kind::end)
            throw ParseError("trailing input: unexpected " + tok_name(peek()),
                             peek().line, peek().col, "end of input");
    }

    int expect_small_int(const std::string& what) {
        const Tok t = expect(Tok::Kind::number, what);
        if (t.text.size() > 6)
            throw ParseError("integer out of range", t.line, t.col, what);
        return std::stoi(t.text);
    }

    // elem := ['-'] term (('+'|'-') term)* | '0'
    Element parse_elem(int degree_hint) {
        if (peek().kind == Tok::Kind::number && peek().text == "0" &&
            (peek(1).kind == Tok::Kind::end || peek(1).kind == Tok::Kind::semi)) {
            const Tok z = toks_[pos_++];
            if (degree_hint < 0)
                throw ParseError("the degree of a zero element cannot be inferred",
                                 z.line, z.col, "a nonzero term or a degree hint");
            return guarded(z, [&] { return Element(shape_, degree_hint); });
        }
        Element acc = parse_term(accept(Tok::Kind::minus));
        for (;;) {
            const Tok op = peek();
            bool neg;
            if (accept(Tok::Kind::plus)) neg = false;
            else if (accept(Tok::Kind::minus)) neg = true;
            else break;
            Element t = parse_term(neg);
            if (t.degree() != acc.degree())
                throw ParseError("terms of degree " + std::to_string(acc.degree()) +
                                     " and " + std::to_string(t.degree()) + " in one sum",
                                 op.line, op.col, "terms of a single degree");
            acc = add(acc, t);
        }
        return acc;
    }

    // assign-list form: i(dim,idx) -> elem ; ...
    SelfMap parse_map() {
        SelfMap f{shape_, {}};
        for (;;) {
            const Tok head = expect(Tok::Kind::ident, "'i' starting an assignment");
            if (head.text != "i")
                throw ParseError("unexpected " + tok_name(head), head.line, head.col,
                                 "'i' starting an assignment");
            expect(Tok::Kind::lparen, "'('");
            const int dim = expect_small_int("a dimension");
            expect(Tok::Kind::comma, "','");
            const int idx = expect_small_int("an index");
            expect(Tok::Kind::rparen, "')'");
            if (!shape_->has_sphere(dim, idx))
                throw ParseError("the wedge has no sphere i(" + std::to_string(dim) + "," +
                                     std::to_string(idx) + ")",
                                 head.line, head.col, "a sphere summand of the shape");
            expect(Tok::Kind::arrow, "'->'");
            Element img = parse_elem(dim);
            if (img.degree() != dim)
                throw ParseError("the image of i(" + std::to_string(dim) + "," +
                                     std::to_string(idx) + ") must have degree " +
                                     std::to_string(dim),
                                 head.line, head.col, "an image of the sphere's degree");
            if (!f.images.emplace(std::make_pair(dim, idx), std::move(img)).second)
                throw ParseError("sphere i(" + std::to_string(dim) + "," + std::to_string(idx) +
                                     ") is assigned twice",
                                 head.line, head.col, "each sphere exactly once");
            if (accept(Tok::Kind::semi)) continue;
            break;
        }
        expect_end();
        for (const Summand& s : shape_->summands()) {
            if (s.kind != SummandKind::sphere) continue;
            if (!f.images.count({s.dim, s.index}))
                throw ParseError("missing assignment for i(" + std::to_string(s.dim) + "," +
                                     std::to_string(s.index) + ")",
                                 peek().line, peek().col, "every sphere summand exactly once");
        }
        return f;
    }

  private:
    // Rewrap construction-time precondition failures as parse errors with a
    // position; modeling limits (UnsupportedError) pass through untouched.
    template <typename Fn>
    auto guarded(const Tok& at, Fn&& fn) -> decltype(fn()) {
        try {
            return fn();
        } catch (const PreconditionError& e) {
            throw ParseError(e.what(), at.line, at.col, "");
        }
    }

    // term := [int '*'] gen
    Element parse_term(bool neg) {
        Coeff c = 1;
        if (peek().kind == Tok::Kind::number) {
            const Tok t = toks_[pos_++];
            c = Coeff(t.text);
            expect(Tok::Kind::star, "'*' after a coefficient");
        }
        if (neg) c = -c;
        return scale(c, parse_gen());
    }

    std::vector<CompUnit> parse_comp_units() {
        std::vector<CompUnit> units;
        while (accept(Tok::Kind::dot)) {
            const Tok u = expect(Tok::Kind::ident, "a composition class");
            if (u.text == "eta") {
                units.push_back({CompUnit::Kind::eta, {}});
            } else if (u.text == "eta2") {
                units.push_back({CompUnit::Kind::eta, {}});
                units.push_back({CompUnit::Kind::eta, {}});
            } else if (u.text == "nu'eta") {
                units.push_back({CompUnit::Kind::nu_prime, {}});
            } else if (shape_->find_atom(u.text)) {
                units.push_back({CompUnit::Kind::atom, u.text});
            } else {
                throw ParseError("unknown composition class '" + u.text + "'", u.line, u.col,
                                 "eta, eta2, nu'eta, or a declared class");
            }
        }
        return units;
    }

    // gen := 'i(d,i)' comps | 'W(gen,gen)' comps | 'W3(r,s,t)' | 'O("key")'
    Element parse_gen() {
        const Tok head = expect(Tok::Kind::ident, "a generator (i, W, W3, O)");
        if (head.text == "i") {
            expect(Tok::Kind::lparen, "'('");
            const int dim = expect_small_int("a dimension");
            expect(Tok::Kind::comma, "','");
            const int idx = expect_small_int("an index");
            expect(Tok::Kind::rparen, "')'");
            const std::vector<CompUnit> units = parse_comp_units();
            Comp raw;
            raw.parts = units;
            return guarded(head, [&] {
                const int degree = dim + comp_degree_shift(*shape_, raw);
                const ChainResult r = chain(comp_identity(), raw);
                if (r.is_zero) return Element(shape_, degree);
                return Element(shape_, degree, Term::incl(dim, idx, r.comp));
            });
        }
        if (head.text == "W") {
            expect(Tok::Kind::lparen, "'('");
            Element a = parse_gen();
            expect(Tok::Kind::comma, "','");
            Element b = parse_gen();
            expect(Tok::Kind::rparen, "')'");
            const std::vector<CompUnit> units = parse_comp_units();
            return guarded(head, [&] {
                if (units.empty()) return whitehead(a, b);
                Comp tail;
                tail.parts = units;
                return whitehead(a, b, tail);
            });
        }
        if (head.text == "W3") {
            expect(Tok::Kind::lparen, "'('");
            const int r = expect_small_int("an index");
            expect(Tok::Kind::comma, "','");
            const int s = expect_small_int("an index");
            expect(Tok::Kind::comma, "','");
            const int t = expect_small_int("an index");
            expect(Tok::Kind::rparen, "')'");
            return guarded(head, [&] {
                const Term w3 = Term::wh3(r, s, t);
                return Element(shape_, term_degree(*shape_, w3), w3);
            });
        }
        if (head.text == "O") {
            expect(Tok::Kind::lparen, "'('");
            const Tok key = expect(Tok::Kind::str, "a quoted key");
            expect(Tok::Kind::rparen, "')'");
            return guarded(head, [&] {
                const Term op = Term::opaque(key.text);
                return Element(shape_, term_degree(*shape_, op), op);
            });
        }
        throw ParseError("unknown generator '" + head.text + "'", head.line, head.col,
                         "one of i, W, W3, O");
    }

    std::vector<Tok> toks_;
    ShapePtr shape_;
    size_t pos_ = 0;
};

} // namespace

Element parse_element(const std::string& text, const ShapePtr& shape) {
    Parser p(lex(text), shape);
    Element e = p.parse_elem(-1);
    p.expect_end();
    return e;
}

Element parse_element(const std::string& text, const ShapePtr& shape, int degree_hint) {
    Parser p(lex(text), shape);
    Element e = p.parse_elem(degree_hint);
    p.expect_end();
    return e;
}

SelfMap parse_selfmap(const std::string& text, const ShapePtr& shape) {
    Parser p(lex(text), shape);
    return p.parse_map();
}

std::string to_string(const SelfMap& f) {
    std::string out;
    bool first = true;
    for (const Summand& s : f.shape->summands()) {
        if (s.kind != SummandKind::sphere) continue;
        if (!first) out += "; ";
        first = false;
        out += "i(" + std::to_string(s.dim) + "," + std::to_string(s.index) + ") -> " +
               to_string(f.image_of(s.dim, s.index));
    }
    return out;
}

} // namespace wedgecalc
