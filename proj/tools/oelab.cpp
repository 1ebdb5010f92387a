// oelab: drive the operator-exponential schemes from the command line and
// emit CSV tables (trajectory errors, dispersion curves, convergence orders,
// step-operator norms).

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "oe/analysis.hpp"
#include "oe/format.hpp"
#include "oe/random.hpp"
#include "oe/steppers.hpp"

namespace {

using oe::Complex;
using oe::GridFunction;
using oe::Index;
using oe::Vector;

constexpr Index kDenseCap = 4096;

Complex parse_complex(const std::string& text) {
    // accepted forms: "a", "bi", "a+bi", "a-bi"
    const auto bad = [&]() {
        throw std::invalid_argument("cannot parse complex value: " + text);
    };
    std::string s = text;
    if (s.empty()) bad();
    bool imag_only = false;
    if (s.back() == 'i' || s.back() == 'I') {
        s.pop_back();
        imag_only = true;
    }
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    try {
        if (!imag_only) return Complex(std::stod(s), 0.0);
        if (split == std::string::npos) {
            if (s.empty() || s == "+") return Complex(0.0, 1.0);
            if (s == "-") return Complex(0.0, -1.0);
            return Complex(0.0, std::stod(s));
        }
        const std::string re = s.substr(0, split);
        std::string im = s.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return Complex(std::stod(re), std::stod(im));
    } catch (const std::exception&) {
        bad();
    }
    return {};
}

oe::SchemeKind parse_scheme(const std::string& name) {
    if (name == "s1") return oe::SchemeKind::S1;
    if (name == "s2") return oe::SchemeKind::S2;
    if (name == "euler") return oe::SchemeKind::Euler;
    if (name == "cn") return oe::SchemeKind::CrankNicolson;
    if (name == "exact") return oe::SchemeKind::Exact;
    throw std::invalid_argument("unknown scheme: " + name);
}

struct RunConfig {
    Index n = 128;
    double dt = 0.5;
    Index steps = 100;
    std::string scheme = "s2";
    std::string equation = "diffusion";
    std::string alpha = "-1";
    std::string beta = "-1";
    std::string initial = "random";
    std::uint64_t seed = 1;
    std::string out = "-";
    int jobs = 1;
};

Complex equation_scale(const std::string& equation) {
    if (equation == "diffusion") return Complex(1.0, 0.0);
    if (equation == "schrodinger") return Complex(0.0, 1.0);
    throw std::invalid_argument("unknown equation: " + equation);
}

oe::EvolutionProblem make_problem(const RunConfig& cfg) {
    return oe::EvolutionProblem{
        oe::Stencil::laplacian(),
        oe::ExtensionSpec::third_kind(parse_complex(cfg.alpha), parse_complex(cfg.beta)),
        oe::DomainSpec(cfg.n), equation_scale(cfg.equation)};
}

GridFunction make_initial(const RunConfig& cfg) {
    const oe::DomainSpec domain(cfg.n);
    if (cfg.initial == "delta") {
        Vector v = Vector::Zero(cfg.n);
        v(0) = 1.0;
        return GridFunction(domain, std::move(v));
    }
    if (cfg.initial == "random")
        return GridFunction(domain, oe::random_unit_complex(cfg.n, cfg.seed));
    if (cfg.initial.rfind("eigen:", 0) == 0) {
        const Index j = std::stoll(cfg.initial.substr(6));
        if (j < 0 || j >= cfg.n)
            throw std::invalid_argument("eigen index out of range");
        const oe::DirichletEigenpairs pairs = oe::dirichlet_eigenpairs(cfg.n);
        return GridFunction(domain, pairs.phi.col(j).cast<Complex>());
    }
    if (cfg.initial.rfind("file:", 0) == 0) {
        std::ifstream in(cfg.initial.substr(5));
        if (!in) throw std::invalid_argument("cannot open initial-vector file");
        Vector v(cfg.n);
        std::string line;
        Index k = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (k >= cfg.n) throw std::invalid_argument("initial-vector file too long");
            double re = 0, im = 0;
            char comma = 0;
            std::istringstream row(line);
            row >> re;
            if (row >> comma >> im && comma != ',')
                throw std::invalid_argument("bad initial-vector row: " + line);
            v(k++) = Complex(re, im);
        }
        if (k != cfg.n) throw std::invalid_argument("initial-vector file too short");
        return GridFunction(domain, std::move(v));
    }
    throw std::invalid_argument("unknown initial kind: " + cfg.initial);
}

class CsvSink {
public:
    explicit CsvSink(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void echo_config(std::ostream& os, const std::string& command,
                 const std::vector<std::pair<std::string, std::string>>& kv) {
    os << "# command=" << command << "\n";
    for (const auto& [k, v] : kv) os << "# " << k << "=" << v << "\n";
}

int cmd_evolve(const RunConfig& cfg) {
    const oe::EvolutionProblem p = make_problem(cfg);
    const GridFunction g = make_initial(cfg);
    const oe::SchemeKind scheme = parse_scheme(cfg.scheme);

    std::unique_ptr<oe::ExactPropagator> prop;
    if (cfg.n <= kDenseCap) prop = std::make_unique<oe::ExactPropagator>(p);

    CsvSink sink(cfg.out);
    std::ostream& os = sink.stream();
    echo_config(os, "evolve",
                {{"n", std::to_string(cfg.n)},
                 {"dt", oe::fmt_real(cfg.dt)},
                 {"steps", std::to_string(cfg.steps)},
                 {"scheme", cfg.scheme},
                 {"equation", cfg.equation},
                 {"alpha", oe::fmt_complex(parse_complex(cfg.alpha))},
                 {"beta", oe::fmt_complex(parse_complex(cfg.beta))},
                 {"initial", cfg.initial},
                 {"seed", std::to_string(cfg.seed)}});
    os << "step,time,rel_error,norm\n";
    os << "0,0," << (prop ? "0" : "") << "," << oe::fmt_real(g.norm()) << "\n";

    oe::Observer observer = [&](Index k, double time, const GridFunction& f) {
        std::string rel;
        if (prop) {
            const GridFunction exact = prop->apply(time, g);
            rel = oe::fmt_real((f.values - exact.values).norm() / exact.norm());
        }
        os << k << "," << oe::fmt_real(time) << "," << rel << ","
           << oe::fmt_real(f.norm()) << "\n";
    };
    oe::evolve(p, scheme, cfg.dt, cfg.steps, g, observer);
    return 0;
}

int cmd_fig2(const RunConfig& cfg) {
    RunConfig c = cfg;
    c.equation = "schrodinger";
    c.alpha = "-1";
    c.beta = "-1";
    const oe::EvolutionProblem p = make_problem(c);
    const GridFunction g = make_initial(c);
    const oe::ExactPropagator prop(p);

    CsvSink sink(c.out);
    std::ostream& os = sink.stream();
    echo_config(os, "fig2",
                {{"n", std::to_string(c.n)},
                 {"dt", oe::fmt_real(c.dt)},
                 {"steps", std::to_string(c.steps)},
                 {"equation", c.equation},
                 {"initial", c.initial},
                 {"seed", std::to_string(c.seed)}});
    os << "step,time,s2_rel_error,cn_rel_error\n";
    os << "0,0,0,0\n";

    GridFunction fs2 = g;
    GridFunction fcn = g;
    for (Index k = 1; k <= c.steps; ++k) {
        const double time = static_cast<double>(k) * c.dt;
        fs2 = oe::step_s2(p, c.dt, fs2);
        fcn = oe::step_cn(p, c.dt, fcn);
        const GridFunction exact = prop.apply(time, g);
        const double norm = exact.norm();
        os << k << "," << oe::fmt_real(time) << ","
           << oe::fmt_real((fs2.values - exact.values).norm() / norm) << ","
           << oe::fmt_real((fcn.values - exact.values).norm() / norm) << "\n";
    }
    return 0;
}

int cmd_fig1(const RunConfig& cfg) {
    if (cfg.n % 2 != 0) throw std::invalid_argument("fig1: n must be even");
    CsvSink sink(cfg.out);
    std::ostream& os = sink.stream();
    echo_config(os, "fig1",
                {{"n", std::to_string(cfg.n)}, {"t", oe::fmt_real(cfg.dt)}});
    os << "j,xi,mu,oe_error,cn_error\n";

    if (cfg.n <= kDenseCap) {
        // dense-oracle gate runs before any row is written
        const oe::SpectrumReport report =
            oe::spectrum_report(cfg.dt, cfg.n, 1e-8, cfg.jobs);
        for (const oe::SpectrumRow& row : report.rows)
            os << row.j << "," << oe::fmt_real(row.xi) << ","
               << oe::fmt_real(row.mu_even) << "," << oe::fmt_real(row.oe_error)
               << "," << oe::fmt_real(row.cn_error) << "\n";
        return 0;
    }
    const std::vector<double> xi = oe::dispersion_solve(cfg.dt, cfg.n, cfg.jobs);
    const std::vector<double> cn = oe::cn_dispersion_error(cfg.dt, cfg.n);
    const oe::DirichletEigenpairs pairs = oe::dirichlet_eigenpairs(cfg.n);
    for (Index j = 0; j < cfg.n / 2; ++j) {
        const double mu = pairs.mu(2 * j);
        os << j << "," << oe::fmt_real(xi[j]) << "," << oe::fmt_real(mu) << ","
           << oe::fmt_real(std::abs(xi[j] - mu)) << "," << oe::fmt_real(cn[j])
           << "\n";
    }
    return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
    if (cfg.n % 2 != 0) throw std::invalid_argument("spectrum: n must be even");
    const oe::SpectrumReport report =
        oe::spectrum_report(cfg.dt, cfg.n, 1e-8, cfg.jobs);
    CsvSink sink(cfg.out);
    std::ostream& os = sink.stream();
    echo_config(os, "spectrum",
                {{"n", std::to_string(cfg.n)}, {"t", oe::fmt_real(cfg.dt)}});
    os << "j,xi,mu,oe_error,cn_error,odd_exact\n";
    for (const oe::SpectrumRow& row : report.rows)
        os << row.j << "," << oe::fmt_real(row.xi) << ","
           << oe::fmt_real(row.mu_even) << "," << oe::fmt_real(row.oe_error) << ","
           << oe::fmt_real(row.cn_error) << "," << (row.odd_exact ? 1 : 0) << "\n";
    return 0;
}

int cmd_convergence(const RunConfig& cfg, const std::vector<std::string>& schemes,
                    double horizon, std::vector<double> ladder) {
    if (ladder.empty())
        ladder = {0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (!(ladder[i] < ladder[i - 1]))
            throw std::invalid_argument("dt ladder must be strictly decreasing");

    const oe::EvolutionProblem p = make_problem(cfg);
    const GridFunction g = make_initial(cfg);
    const oe::ExactPropagator prop(p);
    const GridFunction reference = prop.apply(horizon, g);

    CsvSink sink(cfg.out);
    std::ostream& os = sink.stream();
    echo_config(os, "convergence",
                {{"n", std::to_string(cfg.n)},
                 {"equation", cfg.equation},
                 {"horizon", oe::fmt_real(horizon)},
                 {"initial", cfg.initial},
                 {"seed", std::to_string(cfg.seed)}});
    os << "scheme,dt,global_error,observed_order\n";

    for (const std::string& name : schemes) {
        const oe::SchemeKind scheme = parse_scheme(name);
        double prev_err = 0.0;
        double prev_dt = 0.0;
        for (std::size_t i = 0; i < ladder.size(); ++i) {
            const double dt = ladder[i];
            const double steps_real = horizon / dt;
            const Index steps = static_cast<Index>(std::llround(steps_real));
            if (std::abs(static_cast<double>(steps) * dt - horizon) >
                1e-9 * std::abs(horizon))
                throw std::invalid_argument("horizon not an integer multiple of dt");
            const GridFunction f = oe::evolve(p, scheme, dt, steps, g);
            const double err = (f.values - reference.values).norm();
            std::string order;
            if (i > 0 && err > 0.0 && prev_err > 0.0)
                order = oe::fmt_real(std::log(prev_err / err) / std::log(prev_dt / dt));
            os << name << "," << oe::fmt_real(dt) << "," << oe::fmt_real(err) << ","
               << order << "\n";
            prev_err = err;
            prev_dt = dt;
        }
    }
    return 0;
}

int cmd_stability(const RunConfig& cfg, const std::vector<std::string>& bcs,
                  const std::vector<std::string>& schemes,
                  const std::vector<double>& tlist) {
    CsvSink sink(cfg.out);
    std::ostream& os = sink.stream();
    echo_config(os, "stability", {{"n", std::to_string(cfg.n)}});
    os << "bc,scheme,t,op_norm\n";
    for (const std::string& bc : bcs) {
        oe::EvolutionProblem p{oe::Stencil::laplacian(), oe::ExtensionSpec::dirichlet(),
                               oe::DomainSpec(cfg.n), Complex(1.0, 0.0)};
        if (bc == "dirichlet") {
        } else if (bc == "neumann") {
            p.ext_k = oe::ExtensionSpec::neumann();
        } else if (bc == "schrodinger") {
            p.equation_scale = Complex(0.0, 1.0);
        } else {
            throw std::invalid_argument("unknown bc: " + bc);
        }
        for (const std::string& name : schemes) {
            const oe::SchemeKind scheme = parse_scheme(name);
            for (double t : tlist)
                os << bc << "," << name << "," << oe::fmt_real(t) << ","
                   << oe::fmt_real(oe::step_operator_norm(p, scheme, t)) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-exponential time stepping for 1-D difference "
                 "initial-boundary value problems"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> schemes{"s1", "s2", "euler", "cn", "exact"};
    std::vector<std::string> bcs{"dirichlet", "neumann", "schrodinger"};
    std::vector<double> tlist{0.1, 0.5, 1.0, 5.0};
    std::vector<double> ladder;
    double horizon = 1.0;

    auto add_common = [&](CLI::App* sub, bool with_steps) {
        sub->add_option("--n", cfg.n, "lattice points");
        sub->add_option("--dt", cfg.dt, "time step (also the step-operator t)");
        if (with_steps) sub->add_option("--steps", cfg.steps, "number of steps");
        sub->add_option("--out", cfg.out, "output CSV path ('-' for stdout)");
        sub->add_option("--jobs", cfg.jobs, "worker threads for independent points");
        sub->add_option("--seed", cfg.seed, "random seed");
    };

    CLI::App* evolve = app.add_subcommand(
        "evolve", "run one scheme and tabulate per-step error vs the exact exponential");
    add_common(evolve, true);
    evolve->add_option("--scheme", cfg.scheme, "s1|s2|euler|cn|exact");
    evolve->add_option("--equation", cfg.equation, "diffusion|schrodinger");
    evolve->add_option("--alpha", cfg.alpha, "third-kind parameter at the left end");
    evolve->add_option("--beta", cfg.beta, "third-kind parameter at the right end");
    evolve->add_option("--initial", cfg.initial, "delta|random|eigen:J|file:PATH");

    CLI::App* fig1 = app.add_subcommand(
        "fig1", "even-eigenvalue dispersion error of the S2 step operator vs the "
                "Crank-Nicolson baseline");
    add_common(fig1, false);

    CLI::App* fig2 = app.add_subcommand(
        "fig2", "Schrodinger trajectory error comparison: S2 vs Crank-Nicolson");
    add_common(fig2, true);
    fig2->add_option("--initial", cfg.initial, "delta|random|eigen:J|file:PATH");

    CLI::App* conv = app.add_subcommand(
        "convergence", "global error and observed order over a dt ladder");
    add_common(conv, false);
    conv->add_option("--scheme", schemes, "schemes to run")->delimiter(',');
    conv->add_option("--equation", cfg.equation, "diffusion|schrodinger");
    conv->add_option("--alpha", cfg.alpha, "third-kind parameter at the left end");
    conv->add_option("--beta", cfg.beta, "third-kind parameter at the right end");
    conv->add_option("--initial", cfg.initial, "delta|random|eigen:J|file:PATH");
    conv->add_option("--horizon", horizon, "fixed time horizon T");
    conv->add_option("--ladder", ladder, "decreasing dt values")->delimiter(',');

    CLI::App* stab = app.add_subcommand(
        "stability", "largest singular value of the dense step matrix");
    add_common(stab, false);
    stab->add_option("--bc", bcs, "dirichlet|neumann|schrodinger")->delimiter(',');
    stab->add_option("--scheme", schemes, "schemes to run")->delimiter(',');
    stab->add_option("--t-list", tlist, "step-operator times")->delimiter(',');

    CLI::App* spec = app.add_subcommand(
        "spectrum", "dispersion roots with the dense-oracle cross-check");
    add_common(spec, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*evolve) return cmd_evolve(cfg);
        if (*fig1) return cmd_fig1(cfg);
        if (*fig2) return cmd_fig2(cfg);
        if (*conv) {
            std::vector<std::string> conv_schemes = schemes;
            if (!conv->count("--scheme"))
                conv_schemes = {"s1", "s2", "euler", "cn", "exact"};
            return cmd_convergence(cfg, conv_schemes, horizon, ladder);
        }
        if (*stab) {
            std::vector<std::string> stab_schemes{"s1", "s2", "cn"};
            if (stab->count("--scheme")) stab_schemes = schemes;
            return cmd_stability(cfg, bcs, stab_schemes, tlist);
        }
        if (*spec) return cmd_spectrum(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
