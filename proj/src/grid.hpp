#ifndef SBRIDGE_GRID_HPP
#define SBRIDGE_GRID_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "common.hpp"

namespace sbridge {

// Uniform rectangular grid on a box in R^n, n in {1,2}. Values attached to a
// grid are stored row-major: flat = i0 * npts(1) + i1 in 2D, flat = i0 in 1D,
// with axis-k coordinate lo(k) + i_k * spacing(k).
class Grid {
public:
    static constexpr int kMaxDim = 2;

    Grid(int dim, std::array<double, kMaxDim> lo, std::array<double, kMaxDim> hi,
         std::array<int, kMaxDim> npts);

    int dim() const noexcept { return dim_; }
    double lo(int axis) const { return lo_[static_cast<std::size_t>(axis)]; }
    double hi(int axis) const { return hi_[static_cast<std::size_t>(axis)]; }
    int npts(int axis) const { return npts_[static_cast<std::size_t>(axis)]; }
    double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
    double min_spacing() const;
    std::int64_t size() const noexcept { return size_; }

    std::int64_t flat_index(std::array<int, kMaxDim> idx) const;
    std::array<int, kMaxDim> unravel(std::int64_t flat) const;
    std::array<double, kMaxDim> coord(std::array<int, kMaxDim> idx) const;
    std::array<double, kMaxDim> coord_flat(std::int64_t flat) const { return coord(unravel(flat)); }

    // Trapezoidal quadrature weight of one node (product of per-axis weights).
    double quad_weight_axis(int axis, int i) const;
    double quad_weight(std::int64_t flat) const;

    // Flat index of the grid node closest to the origin; throws
    // "OriginNotInGrid" when 0 is outside the box on some axis.
    std::int64_t nearest_to_origin() const;

    bool same_geometry(const Grid& other) const;

private:
    int dim_;
    std::array<double, kMaxDim> lo_{}, hi_{}, spacing_{};
    std::array<int, kMaxDim> npts_{};
    std::int64_t size_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int dim, std::array<double, Grid::kMaxDim> lo,
                  std::array<double, Grid::kMaxDim> hi, std::array<int, Grid::kMaxDim> npts);
GridPtr make_grid_1d(double lo, double hi, int npts);

// Real-valued samples on a grid, row-major.
struct Field {
    GridPtr grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(GridPtr g, double fill = 0.0);
    Field(GridPtr g, std::vector<double> vals);

    double& operator[](std::int64_t i) { return values[static_cast<std::size_t>(i)]; }
    double operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

struct VectorField {
    GridPtr grid;
    std::vector<Field> components;  // dim() entries, same grid

    const Field& comp(int a) const { return components[static_cast<std::size_t>(a)]; }
    Field& comp(int a) { return components[static_cast<std::size_t>(a)]; }
};

// Builds a field by evaluating fn at every node (fn takes the coordinate array).
template <typename Fn>
Field sample_field(const GridPtr& g, Fn&& fn) {
    Field f(g);
    for (std::int64_t i = 0; i < g->size(); ++i) {
        f[i] = fn(g->coord_flat(i));
    }
    return f;
}

void require_finite(const Field& f, const char* what);

// Trapezoidal integral over the grid box. Exact for affine integrands.
double quadrature(const Field& f);

// Central differences at interior nodes, second-order one-sided at the boundary.
VectorField gradient(const Field& f);
Field divergence(const VectorField& v);

// 3-point second-difference per axis; 4-point one-sided at the boundary.
Field laplacian(const Field& f);

// Second directional difference xi . D^2 f xi. Interior nodes only (boundary
// entries are 0); |xi| must be 1 within 1e-12.
Field hessian_quadratic_form(const Field& f, std::array<double, Grid::kMaxDim> xi);

// Rescales f so quadrature(f) == target_mass; rejects negative values.
void normalize_density(Field& f, double target_mass = 1.0);

// Snapshot format: header "grid <dim> <lo...> <hi...> <npts...>" then one
// value per line, row-major, 17 significant digits.
void save_field(const Field& f, const std::string& path);
Field load_field(const std::string& path);

}  // namespace sbridge

#endif
