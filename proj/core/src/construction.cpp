#include "polyangle/construction.hpp"

#include "polyangle/transforms.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

namespace polyangle {

Height Height::finite(Rational v) {
    if (v <= 0) {
        throw std::invalid_argument("height must be positive");
    }
    return Height{HeightKind::Finite, std::move(v)};
}

struct ConstructionExpr::Node {
    OpKind op = OpKind::Point;
    Height height{};
    std::shared_ptr<const Node> base;
    int dim = 0;
    bool has_limit = false;
};

ConstructionExpr::ConstructionExpr(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

ConstructionExpr ConstructionExpr::point() {
    static const std::shared_ptr<const Node> node = std::make_shared<Node>();
    return ConstructionExpr(node);
}

ConstructionExpr ConstructionExpr::pyramid(ConstructionExpr base, Height h) {
    auto node = std::make_shared<Node>();
    node->op = OpKind::Pyramid;
    node->height = std::move(h);
    node->dim = base.dim() + 1;
    node->has_limit =
        base.has_limit_heights() || node->height.kind != HeightKind::Finite;
    node->base = std::move(base.node_);
    return ConstructionExpr(std::move(node));
}

ConstructionExpr ConstructionExpr::prism(ConstructionExpr base, Height h) {
    if (h.kind != HeightKind::Finite) {
        throw std::invalid_argument("prism height must be finite");
    }
    if (h.value <= 0) {
        throw std::invalid_argument("prism height must be positive");
    }
    auto node = std::make_shared<Node>();
    node->op = OpKind::Prism;
    node->height = std::move(h);
    node->dim = base.dim() + 1;
    node->has_limit = base.has_limit_heights();
    node->base = std::move(base.node_);
    return ConstructionExpr(std::move(node));
}

OpKind ConstructionExpr::op() const { return node_->op; }

ConstructionExpr ConstructionExpr::base() const {
    if (node_->op == OpKind::Point) {
        throw std::logic_error("the point has no base");
    }
    return ConstructionExpr(node_->base);
}

const Height& ConstructionExpr::height() const {
    if (node_->op == OpKind::Point) {
        throw std::logic_error("the point has no height");
    }
    return node_->height;
}

int ConstructionExpr::dim() const { return node_->dim; }

bool ConstructionExpr::has_limit_heights() const { return node_->has_limit; }

bool ConstructionExpr::operator==(const ConstructionExpr& other) const {
    const Node* a = node_.get();
    const Node* b = other.node_.get();
    while (a != b) {
        if (a->op != b->op || !(a->height == b->height)) {
            return false;
        }
        a = a->base.get();
        b = b->base.get();
    }
    return true;
}

std::string ConstructionExpr::to_string() const {
    std::vector<const Node*> chain;  // outermost first
    for (const Node* n = node_.get(); n->op != OpKind::Point; n = n->base.get()) {
        chain.push_back(n);
    }
    std::string out;
    std::size_t runs = 0;
    std::size_t i = 0;
    while (i < chain.size()) {
        std::size_t j = i;
        while (j < chain.size() && chain[j]->op == chain[i]->op &&
               chain[j]->height == chain[i]->height) {
            ++j;
        }
        const Node* n = chain[i];
        if (n->op == OpKind::Prism) {
            out += "B*";
        } else if (n->height.kind == HeightKind::Zero) {
            out += "P0";
        } else if (n->height.kind == HeightKind::Infinity) {
            out += "Pinf";
        } else {
            out += "P";
        }
        if (j - i > 1) {
            out += "^";
            out += std::to_string(j - i);
        }
        if (n->height.kind == HeightKind::Finite && n->height.value != 1) {
            out += "_";
            out += format_rational(n->height.value);
        }
        out += "(";
        ++runs;
        i = j;
    }
    out += "pt";
    out.append(runs, ')');
    return out;
}

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
      position_(position) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ConstructionExpr parse() {
        ConstructionExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError("unexpected trailing input", pos_);
        }
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    unsigned char byte_at(std::size_t i) const {
        return i < text_.size() ? static_cast<unsigned char>(text_[i]) : 0;
    }

    /** Decode one UTF-8 superscript digit at pos, as (value, byte length). */
    std::optional<std::pair<int, int>> superscript_digit(std::size_t pos) const {
        const unsigned char b0 = byte_at(pos);
        const unsigned char b1 = byte_at(pos + 1);
        if (b0 == 0xC2) {
            if (b1 == 0xB9) return {{1, 2}};
            if (b1 == 0xB2) return {{2, 2}};
            if (b1 == 0xB3) return {{3, 2}};
        }
        if (b0 == 0xE2 && b1 == 0x81) {
            const unsigned char b2 = byte_at(pos + 2);
            if (b2 == 0xB0) return {{0, 3}};
            if (b2 >= 0xB4 && b2 <= 0xB9) return {{b2 - 0xB0, 3}};
        }
        return std::nullopt;
    }

    long parse_exponent() {
        skip_ws();
        const std::size_t start = pos_;
        long value = 0;
        std::size_t digits = 0;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            ++digits;
            ++pos_;
            if (value > 1000) {
                throw ParseError("exponent too large", start);
            }
        }
        if (digits == 0) {
            throw ParseError("expected an integer exponent", pos_);
        }
        if (value < 1) {
            throw ParseError("exponent must be at least 1", start);
        }
        return value;
    }

    std::optional<long> parse_superscript_exponent() {
        long value = 0;
        std::size_t digits = 0;
        while (auto d = superscript_digit(pos_)) {
            value = value * 10 + d->first;
            ++digits;
            pos_ += d->second;
            if (value > 1000) {
                throw ParseError("exponent too large", pos_);
            }
        }
        if (digits == 0) {
            return std::nullopt;
        }
        if (value < 1) {
            throw ParseError("exponent must be at least 1", pos_);
        }
        return value;
    }

    Rational parse_height(bool is_prism) {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
                c == '-' || c == '+') {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ == start) {
            throw ParseError("expected a rational height", pos_);
        }
        Rational value;
        try {
            value = parse_rational(text_.substr(start, pos_ - start));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), start);
        }
        if (value <= 0) {
            throw ParseError(is_prism ? "prism height must be positive"
                                      : "pyramid height must be positive",
                             start);
        }
        return value;
    }

    ConstructionExpr parse_expr() {
        skip_ws();
        if (consume("pt")) {
            return ConstructionExpr::point();
        }
        const std::size_t op_pos = pos_;
        OpKind op = OpKind::Pyramid;
        HeightKind kind = HeightKind::Finite;
        if (consume("Pinf")) {
            kind = HeightKind::Infinity;
        } else if (consume("P0")) {
            kind = HeightKind::Zero;
        } else if (consume("B*")) {
            op = OpKind::Prism;
        } else if (consume("P")) {
            // plain finite pyramid
        } else {
            throw ParseError("expected 'pt', 'P', 'P0', 'Pinf', or 'B*'", op_pos);
        }
        const bool limited = kind != HeightKind::Finite;

        long power = 1;
        skip_ws();
        if (consume("^")) {
            power = parse_exponent();
        } else if (auto sup = parse_superscript_exponent()) {
            power = *sup;
        }

        std::optional<Rational> height;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '_') {
            if (limited) {
                throw ParseError("P0 and Pinf take no height", pos_);
            }
            ++pos_;
            height = parse_height(op == OpKind::Prism);
        }

        skip_ws();
        if (!consume("(")) {
            // "P^d" with no base is shorthand for the d-simplex over a point.
            if (op == OpKind::Pyramid && kind == HeightKind::Finite && !height) {
                ConstructionExpr simplex = ConstructionExpr::point();
                for (long i = 0; i < power; ++i) {
                    simplex = ConstructionExpr::pyramid(std::move(simplex),
                                                        Height::finite(Rational(1)));
                }
                return simplex;
            }
            throw ParseError("expected '('", pos_);
        }
        ConstructionExpr base = parse_expr();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
            const std::size_t comma_pos = pos_;
            ++pos_;
            if (limited) {
                throw ParseError("P0 and Pinf take no height", comma_pos);
            }
            if (height) {
                throw ParseError("height given twice", comma_pos);
            }
            height = parse_height(op == OpKind::Prism);
            skip_ws();
        }
        if (!consume(")")) {
            throw ParseError("expected ')'", pos_);
        }

        Height h;
        if (kind == HeightKind::Zero) {
            h = Height::zero();
        } else if (kind == HeightKind::Infinity) {
            h = Height::infinity();
        } else {
            h = Height::finite(height.value_or(Rational(1)));
        }
        for (long i = 0; i < power; ++i) {
            base = op == OpKind::Prism ? ConstructionExpr::prism(std::move(base), h)
                                       : ConstructionExpr::pyramid(std::move(base), h);
        }
        return base;
    }
};

/** Operation chain innermost-first, excluding the point. */
std::vector<ConstructionExpr> chain_inside_out(const ConstructionExpr& e) {
    std::vector<ConstructionExpr> chain;
    ConstructionExpr cur = e;
    while (cur.op() != OpKind::Point) {
        chain.push_back(cur);
        cur = cur.base();
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace

ConstructionExpr parse_expr(std::string_view text) {
    return Parser(text).parse();
}

VPolytope build_geometric(const ConstructionExpr& e) {
    if (e.has_limit_heights()) {
        throw std::invalid_argument(
            "limiting heights are not geometrically realizable");
    }
    std::vector<Point> verts;
    verts.push_back(Point{});
    for (const ConstructionExpr& n : chain_inside_out(e)) {
        const Rational& h = n.height().value;
        std::vector<Point> next;
        if (n.op() == OpKind::Prism) {
            next.reserve(verts.size() * 2);
            for (const Point& v : verts) {
                Point bottom = v;
                bottom.push_back(Rational(0));
                next.push_back(std::move(bottom));
            }
            for (const Point& v : verts) {
                Point top = v;
                top.push_back(h);
                next.push_back(std::move(top));
            }
        } else {
            next.reserve(verts.size() + 1);
            Point apex(verts[0].size(), Rational(0));
            for (const Point& v : verts) {
                for (std::size_t k = 0; k < apex.size(); ++k) {
                    apex[k] += v[k];
                }
                Point base_vertex = v;
                base_vertex.push_back(Rational(0));
                next.push_back(std::move(base_vertex));
            }
            for (Rational& c : apex) {
                c /= static_cast<int>(verts.size());
            }
            apex.push_back(h);
            next.push_back(std::move(apex));
        }
        verts = std::move(next);
    }
    return VPolytope::from_vertices(std::move(verts));
}

AlphaFVector exact_alpha_f(const ConstructionExpr& e) {
    std::vector<Rational> a{Rational(1)};
    FVector f = make_f({1});
    const Rational half = make_rational(1, 2);
    for (const ConstructionExpr& n : chain_inside_out(e)) {
        const int base_dim = static_cast<int>(a.size()) - 1;
        const int d = base_dim + 1;
        std::vector<Rational> next(static_cast<std::size_t>(d) + 1);
        next[static_cast<std::size_t>(d)] = 1;
        if (n.op() == OpKind::Prism) {
            for (int i = 0; i <= base_dim; ++i) {
                next[static_cast<std::size_t>(i)] =
                    a[static_cast<std::size_t>(i)] +
                    (i > 0 ? a[static_cast<std::size_t>(i - 1)] : Rational(0));
            }
            a = std::move(next);
            f = prism_f(f);
            continue;
        }
        switch (n.height().kind) {
            case HeightKind::Zero:
                for (int i = 0; i <= d - 2; ++i) {
                    next[static_cast<std::size_t>(i)] = half * f.get(i - 1);
                }
                next[static_cast<std::size_t>(d - 1)] = half * f.get(d - 2) + half;
                break;
            case HeightKind::Infinity:
                if (base_dim == 0) {
                    throw UnsupportedConstruction(
                        "infinite pyramid over a point: the height recursion "
                        "does not converge to a polytope's angle sums");
                }
                for (int i = 0; i <= d - 1; ++i) {
                    next[static_cast<std::size_t>(i)] =
                        half * a[static_cast<std::size_t>(i)] +
                        (i > 0 ? a[static_cast<std::size_t>(i - 1)] : Rational(0));
                }
                break;
            case HeightKind::Finite:
                if (base_dim == 0) {
                    next[0] = 1;  // segment
                } else if (base_dim == 1) {
                    next[0] = half;  // triangle: (1/2, 3/2, 1)
                    next[1] = 3 * half;
                } else {
                    throw UnsupportedConstruction(
                        "finite pyramid heights over bases of dimension 2 or "
                        "more have no exact angle formula");
                }
                break;
        }
        a = std::move(next);
        f = pyramid_f(f);
    }
    return AlphaFVector{exact_alpha(std::move(a)), std::move(f)};
}

FVector predicted_f(const ConstructionExpr& e) {
    FVector f = make_f({1});
    for (const ConstructionExpr& n : chain_inside_out(e)) {
        f = n.op() == OpKind::Prism ? prism_f(f) : pyramid_f(f);
    }
    return f;
}

VPolytope cyclic_polytope(int d, int n) {
    if (d < 2) {
        throw std::invalid_argument("cyclic polytopes need dimension >= 2");
    }
    if (n < d + 1 || n > 60) {
        throw std::invalid_argument(
            "cyclic polytopes need d+1 <= n <= 60 vertices");
    }
    std::vector<Point> verts;
    verts.reserve(static_cast<std::size_t>(n));
    for (int t = 1; t <= n; ++t) {
        Point p;
        p.reserve(static_cast<std::size_t>(d));
        Int power(1);
        for (int j = 0; j < d; ++j) {
            power *= t;
            p.emplace_back(power);
        }
        verts.push_back(std::move(p));
    }
    return VPolytope::from_vertices(std::move(verts));
}

VPolytope regular_tetrahedron() {
    std::vector<Point> verts = {
        {Rational(1), Rational(1), Rational(1)},
        {Rational(1), Rational(-1), Rational(-1)},
        {Rational(-1), Rational(1), Rational(-1)},
        {Rational(-1), Rational(-1), Rational(1)},
    };
    return VPolytope::from_vertices(std::move(verts));
}

VPolytope glued_tetra_bipyramid() {
    // Reflection of (1,1,1) across the plane x+y+z = -1 of its opposite face.
    const Rational r = make_rational(-5, 3);
    std::vector<Point> verts = {
        {Rational(1), Rational(1), Rational(1)},
        {Rational(1), Rational(-1), Rational(-1)},
        {Rational(-1), Rational(1), Rational(-1)},
        {Rational(-1), Rational(-1), Rational(1)},
        {r, r, r},
    };
    return VPolytope::from_vertices(std::move(verts));
}

VPolytope cube(int d) {
    if (d < 1 || d > 5) {
        throw std::invalid_argument("cube(d) supports 1 <= d <= 5");
    }
    std::vector<Point> verts;
    verts.reserve(std::size_t{1} << d);
    for (std::size_t bits = 0; bits < (std::size_t{1} << d); ++bits) {
        Point p;
        p.reserve(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            p.emplace_back((bits >> j) & 1);
        }
        verts.push_back(std::move(p));
    }
    return VPolytope::from_vertices(std::move(verts));
}

VPolytope octahedron() {
    std::vector<Point> verts;
    for (int j = 0; j < 3; ++j) {
        for (int s : {1, -1}) {
            Point p(3, Rational(0));
            p[static_cast<std::size_t>(j)] = s;
            verts.push_back(std::move(p));
        }
    }
    return VPolytope::from_vertices(std::move(verts));
}

namespace {

ConstructionExpr power_of(OpKind op, Height h, ConstructionExpr base, int k) {
    for (int i = 0; i < k; ++i) {
        base = op == OpKind::Prism
                   ? ConstructionExpr::prism(std::move(base), h)
                   : ConstructionExpr::pyramid(std::move(base), h);
    }
    return base;
}

ConstructionExpr segment_expr() {
    return ConstructionExpr::pyramid(ConstructionExpr::point(), Height::finite(1));
}

ConstructionExpr triangle_expr() {
    return ConstructionExpr::pyramid(segment_expr(), Height::finite(1));
}

}  // namespace

std::vector<ConstructionExpr> simplex_span_family(int d) {
    if (d < 1) {
        throw std::invalid_argument("the simplex family needs d >= 1");
    }
    if (d == 1) {
        return {segment_expr()};
    }
    if (d == 2) {
        return {triangle_expr()};
    }
    std::vector<ConstructionExpr> out;
    out.push_back(power_of(OpKind::Pyramid, Height::zero(), segment_expr(), d - 1));
    for (ConstructionExpr& q : simplex_span_family(d - 2)) {
        out.push_back(power_of(OpKind::Pyramid, Height::infinity(), std::move(q), 2));
    }
    return out;
}

std::vector<ConstructionExpr> general_span_family(int d) {
    if (d < 2) {
        throw std::invalid_argument("the general family needs d >= 2");
    }
    if (d == 2) {
        return {triangle_expr(),
                ConstructionExpr::prism(segment_expr(), Height::finite(1))};
    }
    std::vector<ConstructionExpr> out;
    for (ConstructionExpr& q : general_span_family(d - 1)) {
        out.push_back(
            ConstructionExpr::pyramid(std::move(q), Height::infinity()));
    }
    out.push_back(power_of(OpKind::Prism, Height::finite(1), triangle_expr(), d - 2));
    out.push_back(power_of(OpKind::Prism, Height::finite(1), segment_expr(), d - 1));
    return out;
}

}  // namespace polyangle
