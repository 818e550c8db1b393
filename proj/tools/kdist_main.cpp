// kdist: kernel/current distances between point sets, curves, and meshes,
// exact (quadratic) or via random Fourier features (linear in n).
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "kdist/collection.hpp"
#include "kdist/currents.hpp"
#include "kdist/exact.hpp"
#include "kdist/features.hpp"
#include "kdist/io.hpp"
#include "kdist/ipm.hpp"
#include "kdist/spectral.hpp"
#include "kdist/threads.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct KernelOpts {
    std::string kind = "gaussian";
    double sigma = 1.0;
    double width = 2.0;

    kdist::KernelSpec spec() const {
        if (kind == "gaussian") return kdist::KernelSpec::gaussian(sigma);
        if (kind == "box") return kdist::KernelSpec::box(width);
        throw UsageError("unknown kernel kind: " + kind);
    }
};

struct FeatureOpts {
    int rho = 0;  // 0 = exact path
    std::uint64_t seed = 0;
};

void add_kernel_flags(CLI::App* cmd, KernelOpts& k) {
    cmd->add_option("--kernel", k.kind, "Kernel kind: gaussian or box")
        ->check(CLI::IsMember({"gaussian", "box"}));
    cmd->add_option("--sigma", k.sigma, "Gaussian bandwidth");
    cmd->add_option("--width", k.width, "Box cutoff radius");
}

void add_feature_flags(CLI::App* cmd, FeatureOpts& f) {
    cmd->add_option("--features", f.rho, "Feature dimension rho (switches to the approximate path)");
    cmd->add_option("--seed", f.seed, "Seed for the feature map");
}

json distance_json(const kdist::DistanceResult& r, const FeatureOpts& f,
                   double time_ms) {
    json out;
    out["d_squared"] = r.d_squared;
    if (r.d)
        out["d"] = *r.d;
    else
        out["d"] = nullptr;
    out["clamped"] = r.clamped;
    out["method"] = f.rho > 0 ? "features" : "exact";
    if (f.rho > 0) {
        out["rho"] = f.rho;
        out["seed"] = f.seed;
    }
    out["time_ms"] = time_ms;
    if (!r.d) out["note"] = "not a metric for this input";
    return out;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int cmd_points(const std::string& a, const std::string& b, const KernelOpts& ko,
               const FeatureOpts& fo) {
    auto P = kdist::parse_points(read_input(a));
    auto Q = kdist::parse_points(read_input(b));
    auto k = ko.spec();
    auto t0 = Clock::now();
    kdist::DistanceResult r;
    if (fo.rho > 0) {
        if (k.kind != kdist::KernelKind::gaussian)
            throw UsageError("--features requires the gaussian kernel");
        auto f = kdist::sample_feature_map(k.sigma, P.dim, fo.rho, fo.seed);
        double d2 = kdist::approx_distance_sq(kdist::embed_measure(f, P),
                                              kdist::embed_measure(f, Q));
        r = kdist::clamp_distance_sq(d2, 0.0);
    } else {
        r = kdist::kernel_distance(k, P, Q);
    }
    std::cout << distance_json(r, fo, ms_since(t0)).dump() << "\n";
    return 0;
}

int cmd_shapes(bool surfaces, const std::string& a, const std::string& b,
               const KernelOpts& ko, const FeatureOpts& fo) {
    kdist::CurrentAtoms S, T;
    if (surfaces) {
        S = kdist::mesh_atoms(kdist::parse_mesh(read_input(a)));
        T = kdist::mesh_atoms(kdist::parse_mesh(read_input(b)));
    } else {
        S = kdist::curve_atoms(kdist::parse_curve(read_input(a)));
        T = kdist::curve_atoms(kdist::parse_curve(read_input(b)));
    }
    auto k = ko.spec();
    auto t0 = Clock::now();
    kdist::DistanceResult r;
    if (fo.rho > 0) {
        if (k.kind != kdist::KernelKind::gaussian)
            throw UsageError("--features requires the gaussian kernel");
        auto f = kdist::sample_feature_map(k.sigma, S.dim, fo.rho, fo.seed);
        double d2 = kdist::approx_distance_sq(kdist::embed_current(f, S),
                                              kdist::embed_current(f, T));
        r = kdist::clamp_distance_sq(d2, 0.0);
    } else {
        r = kdist::current_distance(k, S, T);
    }
    json out = distance_json(r, fo, ms_since(t0));
    out["atoms"] = {S.size(), T.size()};
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_gram_check(const std::string& a, const KernelOpts& ko) {
    auto P = kdist::parse_points(read_input(a));
    auto g = kdist::gram_matrix(ko.spec(), P.coords, P.dim);
    auto r = kdist::check_positive_definite(g);
    json out;
    out["n"] = r.n;
    out["min_eigenvalue"] = r.min_eigenvalue;
    out["is_positive_semidefinite"] = r.is_positive_semidefinite;
    out["tolerance"] = r.tolerance;
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_lift(const std::string& a, const KernelOpts& ko) {
    auto P = kdist::parse_points(read_input(a));
    auto L = kdist::spectral_lift(ko.spec(), P.coords, P.dim);
    json out;
    out["n"] = P.size();
    out["rank"] = L.eigenvalues.size();
    out["eigenvalues"] = std::vector<double>(
        L.eigenvalues.data(), L.eigenvalues.data() + L.eigenvalues.size());
    out["dropped_negative"] = L.dropped_negative;
    out["is_positive_semidefinite"] = L.dropped_negative == 0.0;
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_ipm(const std::string& a, const std::string& b, const KernelOpts& ko,
            int trials, std::uint64_t seed) {
    auto P = kdist::parse_points(read_input(a));
    auto Q = kdist::parse_points(read_input(b));
    auto k = ko.spec();
    auto r = kdist::kernel_distance(k, P, Q);
    json out;
    out["d_k"] = r.d ? json(*r.d) : json(nullptr);
    out["lower_bound"] = kdist::ipm_lower_bound(k, P, Q, trials, seed);
    out["tv"] = kdist::tv_distance(P, Q);
    std::cout << out.dump() << "\n";
    return 0;
}

std::vector<fs::path> list_dir(const std::string& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no files in directory: " + dir);
    return files;
}

kdist::ShapeCollection load_collection(const std::string& dir,
                                       const std::string& kind,
                                       const KernelOpts& ko,
                                       const FeatureOpts& fo, int* dim_out) {
    auto k = ko.spec();
    if (k.kind != kdist::KernelKind::gaussian)
        throw UsageError("collections require the gaussian kernel");
    if (fo.rho <= 0) throw UsageError("collections require --features <rho>");
    auto files = list_dir(dir);
    kdist::ShapeCollection c;
    bool first = true;
    for (const auto& path : files) {
        std::string text = read_input(path.string());
        if (kind == "points") {
            auto P = kdist::parse_points(text);
            if (first) c.feature_map = kdist::sample_feature_map(k.sigma, P.dim, fo.rho, fo.seed);
            c.add(path.filename().string(), kdist::embed_measure(c.feature_map, P));
            if (dim_out) *dim_out = P.dim;
        } else {
            kdist::CurrentAtoms atoms =
                kind == "surfaces"
                    ? kdist::mesh_atoms(kdist::parse_mesh(text))
                    : kdist::curve_atoms(kdist::parse_curve(text));
            if (first) c.feature_map = kdist::sample_feature_map(k.sigma, atoms.dim, fo.rho, fo.seed);
            c.add(path.filename().string(), kdist::embed_current(c.feature_map, atoms));
            if (dim_out) *dim_out = atoms.dim;
        }
        first = false;
    }
    return c;
}

int cmd_matrix(const std::string& dir, const std::string& kind,
               const KernelOpts& ko, const FeatureOpts& fo) {
    auto c = load_collection(dir, kind, ko, fo, nullptr);
    auto m = kdist::distance_matrix(c);
    std::cout << "name";
    for (const auto& n : c.names) std::cout << "," << n;
    std::cout << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::cout << c.names[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            std::cout << "," << kdist::format_double(m(i, j));
        std::cout << "\n";
    }
    return 0;
}

int cmd_nn(const std::string& dir, const std::string& kind,
           const std::string& query, const KernelOpts& ko,
           const FeatureOpts& fo) {
    auto c = load_collection(dir, kind, ko, fo, nullptr);
    std::string text = read_input(query);
    std::vector<double> q;
    if (kind == "points") {
        q = kdist::embed_measure(c.feature_map, kdist::parse_points(text)).vector;
    } else {
        auto atoms = kind == "surfaces"
                         ? kdist::mesh_atoms(kdist::parse_mesh(text))
                         : kdist::curve_atoms(kdist::parse_curve(text));
        q = kdist::embed_current(c.feature_map, atoms).matrix;
    }
    auto [idx, dist] = kdist::nearest_neighbor(c, q);
    json out;
    out["name"] = c.names[idx];
    out["distance"] = dist;
    std::cout << out.dump() << "\n";
    return 0;
}

kdist::DiscreteMeasure random_cloud(std::mt19937_64& rng, std::size_t n, int d) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    kdist::DiscreteMeasure m;
    m.dim = d;
    m.coords.resize(n * static_cast<std::size_t>(d));
    for (double& c : m.coords) c = u(rng);
    m.weights.assign(n, 1.0);
    return m;
}

template <typename F>
std::pair<double, double> timed_median(F&& run) {
    // median of 5 repetitions; returns {time_ms, value}
    std::vector<double> times;
    double value = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        auto t0 = Clock::now();
        value = run();
        times.push_back(ms_since(t0));
    }
    std::sort(times.begin(), times.end());
    return {times[2], value};
}

int cmd_bench(const std::vector<std::size_t>& sizes, int rho,
              std::uint64_t seed, double sigma, int d) {
    auto k = kdist::KernelSpec::gaussian(sigma);
    std::cout << "n,method,rho,wall_time_ms,d_squared\n";
    for (std::size_t n : sizes) {
        std::mt19937_64 rng(seed);
        auto P = random_cloud(rng, n, d);
        auto Q = random_cloud(rng, n, d);

        auto [t_exact, d2_exact] =
            timed_median([&] { return kdist::kernel_distance_sq(k, P, Q); });
        std::cout << n << ",exact,," << kdist::format_double(t_exact) << ","
                  << kdist::format_double(d2_exact) << "\n";

        auto f = kdist::sample_feature_map(sigma, d, rho, seed);
        auto [t_feat, d2_feat] = timed_median([&] {
            return kdist::approx_distance_sq(kdist::embed_measure(f, P),
                                             kdist::embed_measure(f, Q));
        });
        std::cout << n << ",features," << rho << ","
                  << kdist::format_double(t_feat) << ","
                  << kdist::format_double(d2_feat) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernel and current distances between shapes"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "Worker thread cap (default: machine parallelism, or KDIST_THREADS)");

    KernelOpts ko;
    FeatureOpts fo;
    std::string file_a, file_b, dir, kind = "points", query;
    int trials = 1000;
    std::uint64_t ipm_seed = 0;
    std::vector<std::size_t> sizes = {1024, 2048, 4096};
    int bench_rho = 256, bench_d = 3;
    double bench_sigma = 1.0;
    std::uint64_t bench_seed = 0;

    auto* points = app.add_subcommand("points", "Kernel distance between two point files");
    points->add_option("fileA", file_a)->required();
    points->add_option("fileB", file_b)->required();
    add_kernel_flags(points, ko);
    add_feature_flags(points, fo);
    points->add_flag("--json", "Emit JSON (the default; accepted for compatibility)");

    auto* curves = app.add_subcommand("curves", "Current distance between two POLYLINE files");
    curves->add_option("fileA", file_a)->required();
    curves->add_option("fileB", file_b)->required();
    add_kernel_flags(curves, ko);
    add_feature_flags(curves, fo);

    auto* surfaces = app.add_subcommand("surfaces", "Current distance between two OFF meshes");
    surfaces->add_option("fileA", file_a)->required();
    surfaces->add_option("fileB", file_b)->required();
    add_kernel_flags(surfaces, ko);
    add_feature_flags(surfaces, fo);

    auto* gram = app.add_subcommand("gram-check", "Gram matrix PSD verdict for a point file");
    gram->add_option("file", file_a)->required();
    add_kernel_flags(gram, ko);

    auto* lift = app.add_subcommand("lift", "Spectral lift: eigenvalue spectrum and PSD verdict");
    lift->add_option("file", file_a)->required();
    add_kernel_flags(lift, ko);

    auto* ipm = app.add_subcommand("ipm", "IPM view: D_K, sampled lower bound, TV distance");
    ipm->add_option("fileA", file_a)->required();
    ipm->add_option("fileB", file_b)->required();
    add_kernel_flags(ipm, ko);
    ipm->add_option("--trials", trials, "Random witness directions");
    ipm->add_option("--seed", ipm_seed, "Seed for witness sampling");

    auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix over a directory of shapes (CSV)");
    matrix->add_option("--dir", dir)->required();
    matrix->add_option("--kind", kind)->check(CLI::IsMember({"points", "curves", "surfaces"}));
    add_kernel_flags(matrix, ko);
    add_feature_flags(matrix, fo);

    auto* nn = app.add_subcommand("nn", "Nearest neighbor of a query shape in a directory");
    nn->add_option("--dir", dir)->required();
    nn->add_option("--kind", kind)->check(CLI::IsMember({"points", "curves", "surfaces"}));
    nn->add_option("--query", query)->required();
    add_kernel_flags(nn, ko);
    add_feature_flags(nn, fo);

    auto* bench = app.add_subcommand("bench", "Exact vs features timing on synthetic clouds (CSV)");
    bench->add_option("--sizes", sizes, "Point counts to benchmark");
    bench->add_option("--rho", bench_rho, "Feature dimension");
    bench->add_option("--seed", bench_seed, "Input generation seed");
    bench->add_option("--sigma", bench_sigma, "Gaussian bandwidth");
    bench->add_option("--dim", bench_d, "Point dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    if (threads > 0) kdist::set_thread_count(threads);

    try {
        if (points->parsed()) return cmd_points(file_a, file_b, ko, fo);
        if (curves->parsed()) return cmd_shapes(false, file_a, file_b, ko, fo);
        if (surfaces->parsed()) return cmd_shapes(true, file_a, file_b, ko, fo);
        if (gram->parsed()) return cmd_gram_check(file_a, ko);
        if (lift->parsed()) return cmd_lift(file_a, ko);
        if (ipm->parsed()) return cmd_ipm(file_a, file_b, ko, trials, ipm_seed);
        if (matrix->parsed()) return cmd_matrix(dir, kind, ko, fo);
        if (nn->parsed()) return cmd_nn(dir, kind, query, ko, fo);
        if (bench->parsed())
            return cmd_bench(sizes, bench_rho, bench_seed, bench_sigma, bench_d);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const kdist::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
