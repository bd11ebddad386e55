#include "tradenet/centrality.hpp"

#include <cmath>
#include <sstream>

#include "tradenet/errors.hpp"
#include "tradenet/kernels.hpp"
#include "tradenet/scc.hpp"

namespace tradenet {

const char* to_string(Measure m) noexcept {
    switch (m) {
        case Measure::degree:      return "degree";
        case Measure::eigenvector: return "eigenvector";
        case Measure::randomwalk:  return "randomwalk";
    }
    return "?";
}

const char* to_string(Direction d) noexcept {
    return d == Direction::in ? "in" : "out";
}

std::optional<Measure> measure_from_string(const std::string& s) {
    if (s == "degree") return Measure::degree;
    if (s == "eigenvector") return Measure::eigenvector;
    if (s == "randomwalk") return Measure::randomwalk;
    return std::nullopt;
}

std::optional<Direction> direction_from_string(const std::string& s) {
    if (s == "in") return Direction::in;
    if (s == "out") return Direction::out;
    return std::nullopt;
}

namespace {

CentralityVector make_vector(const AdjacencyMatrix& a, Measure m, Direction d,
                             std::vector<double> values) {
    CentralityVector v;
    v.measure = m;
    v.direction = d;
    v.year = a.year;
    v.countries = a.countries;
    v.values = std::move(values);
    return v;
}

// Power iteration on A + I. The shift leaves eigenvectors untouched, moves
// the dominant eigenvalue to 1 + lambda1, and makes it strictly dominant in
// modulus for every nonnegative A, so the iteration cannot oscillate the way
// the raw chain does on bipartite-support matrices (the 2x2 case flips
// between two states forever without the shift).
CentralityVector eigenvector_impl(const AdjacencyMatrix& a, const Matrix& m, Direction d,
                                  const SolverOptions& opts) {
    if (opts.tolerance <= 0.0)
        fail(Errc::domain_error, "solver tolerance must be positive");
    if (opts.max_iterations < 1)
        fail(Errc::domain_error, "max_iterations must be at least 1");

    const std::size_t n = m.size();
    std::vector<double> x(n, n > 0 ? 1.0 / static_cast<double>(n) : 0.0);
    std::vector<double> y(n, 0.0);

    double change = 0.0;
    bool converged = false;
    for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
        kernels::matvec(m, x, y);
        for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
        double norm = 0.0;
        for (double v : y) norm += v; // entries stay >= 0
        if (norm <= 0.0)
            fail(Errc::zero_limit, "power iteration collapsed to the zero vector");
        change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= norm;
            change += std::abs(y[i] - x[i]);
        }
        x.swap(y);
        if (change <= opts.tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "eigenvector iteration still changing by " << change << " after "
            << opts.max_iterations << " sweeps (tolerance " << opts.tolerance << ")";
        fail(Errc::no_convergence, msg.str());
    }

    kernels::matvec(m, x, y);
    double lambda = 0.0;
    for (double v : y) lambda += v; // ||A x||_1 with ||x||_1 = 1

    CentralityVector out = make_vector(a, Measure::eigenvector, d, std::move(x));
    out.leading_eigenvalue = lambda;
    return out;
}

std::vector<std::string> dangling_labels(const CountryIndex& countries,
                                         const std::vector<double>& degrees) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < degrees.size(); ++j)
        if (degrees[j] == 0.0) out.push_back(countries.label(j));
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
    }
    return out;
}

CentralityVector randomwalk_impl(const AdjacencyMatrix& a, WalkKind kind, Direction d,
                                 const SolverOptions& opts) {
    TransitionMatrix m = build_transition(a, kind, opts.dangling_policy);
    const std::size_t n = m.entries.size();

    if (!is_strongly_connected(m.entries)) {
        auto component = smallest_component(m.entries);
        std::vector<std::string> labels;
        for (std::size_t v : component) labels.push_back(a.countries.label(v));
        fail(Errc::reducible_network,
             "network is not strongly connected; smallest component: {" + join(labels) + "}");
    }

    // (M - I) p = 0 with the last row replaced by sum(p) = 1.
    Matrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            b(i, j) = (i + 1 == n) ? 1.0 : m.entries(i, j) - (i == j ? 1.0 : 0.0);
    std::vector<double> rhs(n, 0.0);
    rhs[n - 1] = 1.0;

    std::vector<double> p = kernels::solve_linear(b, rhs);

    auto residual_inf = [&](const std::vector<double>& v) {
        std::vector<double> mv;
        kernels::matvec(m.entries, v, mv);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(mv[i] - v[i]));
        return worst;
    };

    // A couple of refinement passes squeeze the residual when the direct
    // solve lands just above the target.
    for (int pass = 0; pass < 2 && residual_inf(p) > 1e-11; ++pass) {
        std::vector<double> r(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            long double acc = rhs[i];
            for (std::size_t j = 0; j < n; ++j)
                acc -= static_cast<long double>(b(i, j)) * p[j];
            r[i] = static_cast<double>(acc);
        }
        std::vector<double> delta = kernels::solve_linear(b, r);
        for (std::size_t i = 0; i < n; ++i) p[i] += delta[i];
    }

    double mass = 0.0;
    for (double& v : p) {
        if (v < 0.0) {
            if (v < -1e-9)
                fail(Errc::no_convergence, "stationary solve produced negative probability mass");
            v = 0.0;
        }
        mass += v;
    }
    for (double& v : p) v /= mass;

    const double res = residual_inf(p);
    if (res > 1e-10) {
        std::ostringstream msg;
        msg << "stationary residual " << res << " exceeds 1e-10";
        fail(Errc::no_convergence, msg.str());
    }
    return make_vector(a, Measure::randomwalk, d, std::move(p));
}

} // namespace

CentralityVector degree_out(const AdjacencyMatrix& a) {
    return make_vector(a, Measure::degree, Direction::out, kernels::row_sums(a.weights));
}

CentralityVector degree_in(const AdjacencyMatrix& a) {
    return make_vector(a, Measure::degree, Direction::in, kernels::col_sums(a.weights));
}

CentralityVector eigenvector_out(const AdjacencyMatrix& a, const SolverOptions& opts) {
    return eigenvector_impl(a, a.weights, Direction::out, opts);
}

CentralityVector eigenvector_in(const AdjacencyMatrix& a, const SolverOptions& opts) {
    return eigenvector_impl(a, a.weights.transposed(), Direction::in, opts);
}

TransitionMatrix build_transition(const AdjacencyMatrix& a, WalkKind kind,
                                  DanglingPolicy policy) {
    const std::size_t n = a.weights.size();
    const std::vector<double> degrees =
        kind == WalkKind::in_walk ? kernels::row_sums(a.weights) : kernels::col_sums(a.weights);

    auto dangling = dangling_labels(a.countries, degrees);
    if (!dangling.empty() && policy == DanglingPolicy::error) {
        const char* which = kind == WalkKind::in_walk ? "out" : "in";
        fail(Errc::dangling_node, std::string("countries with zero ") + which +
                                      "-degree: {" + join(dangling) + "}");
    }

    TransitionMatrix m;
    m.kind = kind;
    m.entries = Matrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (degrees[j] == 0.0) {
            for (std::size_t i = 0; i < n; ++i)
                m.entries(i, j) = 1.0 / static_cast<double>(n);
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double w = kind == WalkKind::in_walk ? a.weights(j, i) : a.weights(i, j);
            m.entries(i, j) = w / degrees[j];
        }
    }
    return m;
}

CentralityVector randomwalk_in(const AdjacencyMatrix& a, const SolverOptions& opts) {
    return randomwalk_impl(a, WalkKind::in_walk, Direction::in, opts);
}

CentralityVector randomwalk_out(const AdjacencyMatrix& a, const SolverOptions& opts) {
    return randomwalk_impl(a, WalkKind::out_walk, Direction::out, opts);
}

CentralityVector compute_centrality(const AdjacencyMatrix& a, Measure measure,
                                    Direction direction, const SolverOptions& opts) {
    switch (measure) {
        case Measure::degree:
            return direction == Direction::in ? degree_in(a) : degree_out(a);
        case Measure::eigenvector:
            return direction == Direction::in ? eigenvector_in(a, opts)
                                              : eigenvector_out(a, opts);
        case Measure::randomwalk:
            return direction == Direction::in ? randomwalk_in(a, opts)
                                              : randomwalk_out(a, opts);
    }
    fail(Errc::domain_error, "unknown measure");
}

} // namespace tradenet
