#include "grid.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sbridge {

Grid::Grid(int dim, std::array<double, kMaxDim> lo, std::array<double, kMaxDim> hi,
           std::array<int, kMaxDim> npts)
    : dim_(dim), lo_(lo), hi_(hi), npts_(npts) {
    if (dim < 1 || dim > kMaxDim) fail("InvalidGrid", "dim must be 1 or 2");
    size_ = 1;
    for (int a = 0; a < dim; ++a) {
        auto ia = static_cast<std::size_t>(a);
        if (!(hi[ia] > lo[ia])) fail("InvalidGrid", "hi must exceed lo on every axis");
        if (npts[ia] < 8) fail("GridTooSmall", "need at least 8 points per axis");
        spacing_[ia] = (hi[ia] - lo[ia]) / (npts[ia] - 1);
        size_ *= npts[ia];
    }
    for (int a = dim; a < kMaxDim; ++a) {
        lo_[static_cast<std::size_t>(a)] = 0.0;
        hi_[static_cast<std::size_t>(a)] = 0.0;
        npts_[static_cast<std::size_t>(a)] = 1;
        spacing_[static_cast<std::size_t>(a)] = 0.0;
    }
}

double Grid::min_spacing() const {
    double h = spacing_[0];
    for (int a = 1; a < dim_; ++a) h = std::min(h, spacing(a));
    return h;
}

std::int64_t Grid::flat_index(std::array<int, kMaxDim> idx) const {
    if (dim_ == 1) return idx[0];
    return static_cast<std::int64_t>(idx[0]) * npts_[1] + idx[1];
}

std::array<int, Grid::kMaxDim> Grid::unravel(std::int64_t flat) const {
    if (dim_ == 1) return {static_cast<int>(flat), 0};
    return {static_cast<int>(flat / npts_[1]), static_cast<int>(flat % npts_[1])};
}

std::array<double, Grid::kMaxDim> Grid::coord(std::array<int, kMaxDim> idx) const {
    std::array<double, kMaxDim> x{};
    for (int a = 0; a < dim_; ++a) {
        auto ia = static_cast<std::size_t>(a);
        x[ia] = lo_[ia] + idx[ia] * spacing_[ia];
    }
    return x;
}

double Grid::quad_weight_axis(int axis, int i) const {
    const double h = spacing(axis);
    return (i == 0 || i == npts(axis) - 1) ? 0.5 * h : h;
}

double Grid::quad_weight(std::int64_t flat) const {
    const auto idx = unravel(flat);
    double w = 1.0;
    for (int a = 0; a < dim_; ++a) w *= quad_weight_axis(a, idx[static_cast<std::size_t>(a)]);
    return w;
}

std::int64_t Grid::nearest_to_origin() const {
    std::array<int, kMaxDim> idx{};
    for (int a = 0; a < dim_; ++a) {
        if (lo(a) > 0.0 || hi(a) < 0.0) fail("OriginNotInGrid", "origin lies outside the grid box");
        const double k = -lo(a) / spacing(a);
        idx[static_cast<std::size_t>(a)] =
            std::clamp(static_cast<int>(std::lround(k)), 0, npts(a) - 1);
    }
    return flat_index(idx);
}

bool Grid::same_geometry(const Grid& other) const {
    if (dim_ != other.dim_) return false;
    for (int a = 0; a < dim_; ++a) {
        if (lo(a) != other.lo(a) || hi(a) != other.hi(a) || npts(a) != other.npts(a)) return false;
    }
    return true;
}

GridPtr make_grid(int dim, std::array<double, Grid::kMaxDim> lo,
                  std::array<double, Grid::kMaxDim> hi, std::array<int, Grid::kMaxDim> npts) {
    return std::make_shared<const Grid>(dim, lo, hi, npts);
}

GridPtr make_grid_1d(double lo, double hi, int npts) {
    return make_grid(1, {lo, 0.0}, {hi, 0.0}, {npts, 1});
}

Field::Field(GridPtr g, double fill)
    : grid(std::move(g)), values(static_cast<std::size_t>(grid->size()), fill) {}

Field::Field(GridPtr g, std::vector<double> vals) : grid(std::move(g)), values(std::move(vals)) {
    if (static_cast<std::int64_t>(values.size()) != grid->size())
        fail("InvalidField", "value count does not match grid size");
}

void require_finite(const Field& f, const char* what) {
    for (double v : f.values) {
        if (!std::isfinite(v)) fail("NonFiniteField", std::string(what) + " contains a non-finite value");
    }
}

double quadrature(const Field& f) {
    require_finite(f, "integrand");
    const Grid& g = *f.grid;
    double acc = 0.0;
    if (g.dim() == 1) {
        const int n = g.npts(0);
        for (int i = 0; i < n; ++i) acc += g.quad_weight_axis(0, i) * f[i];
    } else {
        for (std::int64_t i = 0; i < g.size(); ++i) acc += g.quad_weight(i) * f[i];
    }
    return acc;
}

namespace {

// d/dx along one axis: central interior, 2nd-order one-sided at the ends.
void deriv1_line(const double* v, int n, std::int64_t stride, double h, double* out,
                 std::int64_t out_stride) {
    auto at = [&](int i) { return v[i * stride]; };
    out[0] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
    for (int i = 1; i < n - 1; ++i) out[i * out_stride] = (at(i + 1) - at(i - 1)) / (2.0 * h);
    out[(n - 1) * out_stride] = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
}

// d2/dx2 along one axis: 3-point interior, 4-point one-sided at the ends
// (both exact on quadratics).
void deriv2_line(const double* v, int n, std::int64_t stride, double h, double* out,
                 std::int64_t out_stride) {
    auto at = [&](int i) { return v[i * stride]; };
    const double h2 = h * h;
    out[0] = (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / h2;
    for (int i = 1; i < n - 1; ++i)
        out[i * out_stride] = (at(i + 1) - 2.0 * at(i) + at(i - 1)) / h2;
    out[(n - 1) * out_stride] =
        (2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4)) / h2;
}

template <typename LineOp>
Field per_axis_stencil(const Field& f, int axis, LineOp&& op) {
    const Grid& g = *f.grid;
    if (g.npts(axis) < 4) fail("GridTooSmall", "stencil needs at least 4 points per axis");
    Field out(f.grid);
    const double h = g.spacing(axis);
    if (g.dim() == 1) {
        op(f.values.data(), g.npts(0), 1, h, out.values.data(), 1);
        return out;
    }
    const int n0 = g.npts(0), n1 = g.npts(1);
    if (axis == 0) {
        for (int j = 0; j < n1; ++j)
            op(f.values.data() + j, n0, n1, h, out.values.data() + j, n1);
    } else {
        for (int i = 0; i < n0; ++i)
            op(f.values.data() + static_cast<std::int64_t>(i) * n1, n1, 1, h,
               out.values.data() + static_cast<std::int64_t>(i) * n1, 1);
    }
    return out;
}

}  // namespace

VectorField gradient(const Field& f) {
    require_finite(f, "gradient input");
    VectorField v;
    v.grid = f.grid;
    for (int a = 0; a < f.grid->dim(); ++a)
        v.components.push_back(per_axis_stencil(f, a, deriv1_line));
    return v;
}

Field divergence(const VectorField& v) {
    Field out(v.grid);
    for (int a = 0; a < v.grid->dim(); ++a) {
        Field da = per_axis_stencil(v.comp(a), a, deriv1_line);
        for (std::int64_t i = 0; i < out.size(); ++i) out[i] += da[i];
    }
    return out;
}

Field laplacian(const Field& f) {
    require_finite(f, "laplacian input");
    Field out(f.grid);
    for (int a = 0; a < f.grid->dim(); ++a) {
        Field da = per_axis_stencil(f, a, deriv2_line);
        for (std::int64_t i = 0; i < out.size(); ++i) out[i] += da[i];
    }
    return out;
}

Field hessian_quadratic_form(const Field& f, std::array<double, Grid::kMaxDim> xi) {
    require_finite(f, "hessian input");
    const Grid& g = *f.grid;
    double norm2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) norm2 += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
        fail("NotUnitDirection", "direction must have unit length");

    Field out(f.grid);
    if (g.dim() == 1) {
        const double h2 = g.spacing(0) * g.spacing(0);
        for (int i = 1; i < g.npts(0) - 1; ++i)
            out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
        return out;
    }
    const int n0 = g.npts(0), n1 = g.npts(1);
    const double h0 = g.spacing(0), h1 = g.spacing(1);
    const double a0 = xi[0], a1 = xi[1];
    auto at = [&](int i, int j) { return f[static_cast<std::int64_t>(i) * n1 + j]; };
    for (int i = 1; i < n0 - 1; ++i) {
        for (int j = 1; j < n1 - 1; ++j) {
            const double fxx = (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (h0 * h0);
            const double fyy = (at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1)) / (h1 * h1);
            const double fxy = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) +
                                at(i - 1, j - 1)) /
                               (4.0 * h0 * h1);
            out[static_cast<std::int64_t>(i) * n1 + j] =
                a0 * a0 * fxx + 2.0 * a0 * a1 * fxy + a1 * a1 * fyy;
        }
    }
    return out;
}

void normalize_density(Field& f, double target_mass) {
    for (double v : f.values) {
        if (v < -1e-12) fail("NegativeDensity", "density has a negative entry");
    }
    for (double& v : f.values) v = std::max(v, 0.0);
    const double mass = quadrature(f);
    if (!(mass > 0.0)) fail("DegenerateMarginal", "density has zero total mass");
    const double scale = target_mass / mass;
    for (double& v : f.values) v *= scale;
}

void save_field(const Field& f, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) fail("IoError", "cannot open for writing: " + path);
    const Grid& g = *f.grid;
    std::fprintf(fp, "grid %d", g.dim());
    for (int a = 0; a < g.dim(); ++a) std::fprintf(fp, " %.17g", g.lo(a));
    for (int a = 0; a < g.dim(); ++a) std::fprintf(fp, " %.17g", g.hi(a));
    for (int a = 0; a < g.dim(); ++a) std::fprintf(fp, " %d", g.npts(a));
    std::fprintf(fp, "\n");
    for (double v : f.values) std::fprintf(fp, "%.17g\n", v);
    std::fclose(fp);
}

Field load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot open for reading: " + path);
    std::string header;
    if (!std::getline(in, header)) fail("IoError", "empty snapshot: " + path);
    std::istringstream hs(header);
    std::string tag;
    int dim = 0;
    hs >> tag >> dim;
    if (tag != "grid" || dim < 1 || dim > Grid::kMaxDim)
        fail("IoError", "bad snapshot header in " + path);
    std::array<double, Grid::kMaxDim> lo{}, hi{};
    std::array<int, Grid::kMaxDim> npts{1, 1};
    for (int a = 0; a < dim; ++a) hs >> lo[static_cast<std::size_t>(a)];
    for (int a = 0; a < dim; ++a) hs >> hi[static_cast<std::size_t>(a)];
    for (int a = 0; a < dim; ++a) hs >> npts[static_cast<std::size_t>(a)];
    if (!hs) fail("IoError", "bad snapshot header in " + path);
    GridPtr g = make_grid(dim, lo, hi, npts);
    std::vector<double> vals(static_cast<std::size_t>(g->size()));
    for (auto& v : vals) {
        if (!(in >> v)) fail("IoError", "truncated snapshot: " + path);
    }
    return Field(std::move(g), std::move(vals));
}

}  // namespace sbridge
