#include "kdist/currents.hpp"

#include <cmath>
#include <vector>

#include "kdist/threads.hpp"

namespace kdist {

namespace {

double inner(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double atom_row_sum(const KernelSpec& k, std::span<const double> pos,
                    std::span<const double> vec, const CurrentAtoms& T) {
    double acc = 0.0;
    for (std::size_t j = 0; j < T.size(); ++j)
        acc += eval_kernel_sq(k, squared_distance(pos, T.position(j))) *
               inner(vec, T.vector(j));
    return acc;
}

}  // namespace

CurrentAtoms curve_atoms(const PolyCurve& c) {
    const int d = c.dim;
    const std::size_t nv = c.vertex_count();
    CurrentAtoms atoms;
    atoms.dim = d;
    atoms.positions.resize((nv - 1) * d);
    atoms.vectors.resize((nv - 1) * d);
    for (std::size_t i = 0; i + 1 < nv; ++i) {
        auto a = c.vertex(i);
        auto b = c.vertex(i + 1);
        for (int j = 0; j < d; ++j) {
            atoms.positions[i * d + j] = 0.5 * (a[j] + b[j]);
            atoms.vectors[i * d + j] = b[j] - a[j];
        }
    }
    return atoms;
}

CurrentAtoms mesh_atoms(const TriMesh& m) {
    CurrentAtoms atoms;
    atoms.dim = 3;
    const std::size_t nf = m.triangle_count();
    atoms.positions.resize(nf * 3);
    atoms.vectors.resize(nf * 3);
    for (std::size_t f = 0; f < nf; ++f) {
        auto a = m.vertex(m.triangles[3 * f]);
        auto b = m.vertex(m.triangles[3 * f + 1]);
        auto c = m.vertex(m.triangles[3 * f + 2]);
        double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
        atoms.positions[3 * f] = (a[0] + b[0] + c[0]) / 3.0;
        atoms.positions[3 * f + 1] = (a[1] + b[1] + c[1]) / 3.0;
        atoms.positions[3 * f + 2] = (a[2] + b[2] + c[2]) / 3.0;
        atoms.vectors[3 * f] = 0.5 * (u[1] * v[2] - u[2] * v[1]);
        atoms.vectors[3 * f + 1] = 0.5 * (u[2] * v[0] - u[0] * v[2]);
        atoms.vectors[3 * f + 2] = 0.5 * (u[0] * v[1] - u[1] * v[0]);
    }
    return atoms;
}

double ref::current_cross_similarity(const KernelSpec& k, const CurrentAtoms& S,
                                     const CurrentAtoms& T) {
    if (S.dim != T.dim)
        throw std::invalid_argument("dimension mismatch: " + std::to_string(S.dim) +
                                    " vs " + std::to_string(T.dim));
    double acc = 0.0;
    for (std::size_t i = 0; i < S.size(); ++i)
        acc += atom_row_sum(k, S.position(i), S.vector(i), T);
    return acc;
}

double current_cross_similarity(const KernelSpec& k, const CurrentAtoms& S,
                                const CurrentAtoms& T) {
    if (S.dim != T.dim)
        throw std::invalid_argument("dimension mismatch: " + std::to_string(S.dim) +
                                    " vs " + std::to_string(T.dim));
    const auto n = static_cast<std::ptrdiff_t>(S.size());
    std::vector<double> partial(S.size());
#pragma omp parallel for schedule(static) num_threads(kdist::thread_count())
    for (std::ptrdiff_t i = 0; i < n; ++i)
        partial[i] = atom_row_sum(k, S.position(i), S.vector(i), T);
    double acc = 0.0;
    for (double v : partial) acc += v;
    return acc;
}

double current_distance_sq(const KernelSpec& k, const CurrentAtoms& S,
                           const CurrentAtoms& T) {
    return current_cross_similarity(k, S, S) + current_cross_similarity(k, T, T) -
           2.0 * current_cross_similarity(k, S, T);
}

DistanceResult current_distance(const KernelSpec& k, const CurrentAtoms& S,
                                const CurrentAtoms& T, double clamp_tolerance) {
    double kss = current_cross_similarity(k, S, S);
    double ktt = current_cross_similarity(k, T, T);
    double d2 = kss + ktt - 2.0 * current_cross_similarity(k, S, T);
    if (clamp_tolerance < 0)
        clamp_tolerance = 1e-9 * std::max({kss, ktt, 1.0});
    return clamp_distance_sq(d2, clamp_tolerance);
}

PolyCurve refine_curve(const PolyCurve& c, int levels) {
    if (levels < 0 || levels > 16)
        throw std::invalid_argument("refine_curve: levels must be in [0, 16]");
    if (levels == 0) return c;
    const int d = c.dim;
    const std::size_t splits = std::size_t{1} << levels;
    const std::size_t nv = c.vertex_count();
    PolyCurve out;
    out.dim = d;
    out.vertices.reserve(((nv - 1) * splits + 1) * d);
    for (std::size_t i = 0; i + 1 < nv; ++i) {
        auto a = c.vertex(i);
        auto b = c.vertex(i + 1);
        for (std::size_t s = 0; s < splits; ++s) {
            double t = static_cast<double>(s) / static_cast<double>(splits);
            for (int j = 0; j < d; ++j)
                out.vertices.push_back(a[j] + t * (b[j] - a[j]));
        }
    }
    auto last = c.vertex(nv - 1);
    out.vertices.insert(out.vertices.end(), last.begin(), last.end());
    return out;
}

}  // namespace kdist
