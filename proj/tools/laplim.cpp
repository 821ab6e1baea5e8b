// Command-line driver: spectral radii, Shearer-type generators, limit
// extraction, convergence certificates and the sampling experiments.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "laplim/experiments.hpp"
#include "laplim/expr.hpp"
#include "laplim/limits.hpp"
#include "laplim/serialize.hpp"
#include "laplim/shearer.hpp"
#include "laplim/spectral.hpp"
#include "laplim/variational.hpp"

namespace {

using namespace laplim;

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitInconsistent = 4;
constexpr int kExitPrecisionCap = 5;

struct Output {
    std::string format = "text";  // text | json
    std::string path;             // empty: stdout

    void emit(const json& j, const std::string& text) const {
        std::string body = (format == "json") ? j.dump(2) + "\n" : text;
        if (path.empty()) {
            std::fputs(body.c_str(), stdout);
        } else {
            std::ofstream f(path, std::ios::binary);
            f << body;
        }
    }
};

MatrixKind parse_kind(const std::string& s) {
    if (s == "laplacian") return MatrixKind::Laplacian;
    if (s == "signless") return MatrixKind::SignlessLaplacian;
    if (s == "adjacency") return MatrixKind::Adjacency;
    throw std::domain_error("unknown matrix kind '" + s + "'");
}

LinearTree tree_from_args(const std::string& literal, bool caterpillar) {
    if (!caterpillar) return parse_linear_tree(literal);
    std::string s = literal;
    if (!s.empty() && s.front() == '[') s = s.substr(1, s.size() - 2);
    std::vector<int> r;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            r.push_back(std::stoi(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return from_caterpillar(r);
}

SequenceSpec lemma34_spec() {
    SequenceSpec s;
    s.prefix = {Starlike({1, 1, 1})};
    s.tail_kind = TailKind::ConstantTail;
    s.tail_stars = {Starlike({1})};
    s.closing = ClosingRule::ExplicitList;
    s.closing_list = {Starlike({1, 1})};
    return s;
}

// 30-term linear-tree stream recorded from a genetic search against 5.4.
SequenceSpec genetic29_spec() {
    SequenceSpec s;
    const char* lit =
        "[[0],[1,1],[1],[7],[5],[6],[7],[7],[2],[3],[5],[6],[2],[5],[4],[4],[6],[6],[6],[0],"
        "[6],[1,1],[0],[6],[0],[3],[4],[4],[7],[1,1]]";
    s.prefix = parse_linear_tree(lit).stars();
    return s;
}

SequenceSpec spec_from_arg(const std::string& arg) {
    if (arg == "lemma34") return lemma34_spec();
    if (arg == "genetic-29" || arg == "<genetic-29>") return genetic29_spec();
    return parse_spec_literal(arg);
}

std::vector<int> parse_index_list(const std::string& s) {
    std::vector<int> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            out.push_back(std::stoi(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

int cmd_radius(const std::string& literal, bool caterpillar, const std::string& kind_s,
               double tol, long prec, const Output& out) {
    LinearTree g = tree_from_args(literal, caterpillar);
    MatrixKind kind = parse_kind(kind_s);
    char buf[256];
    if (prec > 0) {
        BigFloat btol = BigFloat::pow2(-prec + 16, prec);
        auto r = radius(g, kind, btol);
        std::snprintf(buf, sizeof buf, "radius = %s\nbracket = [%s, %s]\niterations = %d\n",
                      r.value.str(static_cast<int>(prec * 0.3)).c_str(), r.lo.str(20).c_str(),
                      r.hi.str(20).c_str(), r.iterations);
        out.emit(to_json(r), buf);
    } else {
        auto r = radius(g, kind, tol);
        std::snprintf(buf, sizeof buf, "radius = %.12f\nbracket = [%.15g, %.15g]\niterations = %d\n",
                      r.value, r.lo, r.hi, r.iterations);
        out.emit(to_json(r), buf);
    }
    return 0;
}

/// Decimal literal as an exact rational; empty optional when the text needs
/// the expression grammar.
std::optional<BigRat> decimal_as_rational(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = (s[i++] == '-');
    std::string digits;
    long scale = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits += s[i];
            seen_digit = true;
            if (seen_dot) ++scale;
        } else if (s[i] == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            return std::nullopt;
        }
    }
    if (!seen_digit) return std::nullopt;
    BigRat num{BigInt(digits)};
    BigRat den(1);
    for (long e = 0; e < scale; ++e) den *= 10;
    BigRat q = num / den;
    return neg ? BigRat(-q) : q;
}

int cmd_diagonalize(const std::string& literal, const std::string& x_expr,
                    const std::string& kind_s, const Output& out) {
    LinearTree g = parse_linear_tree(literal);
    MatrixKind kind = parse_kind(kind_s);
    RootedTree t = realize(g, kind);

    // rational probes take the exact backend, so eigenvalue hits (zero
    // diagonal entries) are decided exactly
    std::vector<double> diag;
    Inertia inertia;
    double probe;
    if (auto q = decimal_as_rational(x_expr)) {
        auto d = diagonalize_tree<BigRat>(t, *q, kind);
        for (const auto& v : d.diagonal) diag.push_back(v.get_d());
        inertia = d.inertia;
        probe = q->get_d();
    } else {
        double x = parse_real_expr(x_expr, 64).to_double();
        auto d = diagonalize_tree(t, x, kind);
        diag = d.diagonal;
        inertia = d.inertia;
        probe = x;
    }

    std::string text = "diagonal =";
    json jd = json::array();
    for (double v : diag) {
        char b[40];
        std::snprintf(b, sizeof b, " %.9g", v);
        text += b;
        jd.push_back(v);
    }
    char b[128];
    std::snprintf(b, sizeof b, "\ninertia: below=%d equal=%d above=%d\n", inertia.below,
                  inertia.equal, inertia.above);
    text += b;
    json j{{"schema", "laplim/diagonalize/1"},
           {"kind", matrix_kind_name(kind)},
           {"probe", probe},
           {"diagonal", jd},
           {"inertia", {{"below", inertia.below}, {"equal", inertia.equal},
                        {"above", inertia.above}}}};
    out.emit(j, text);
    return 0;
}

int cmd_shearer(const std::string& mode, const std::string& mu_expr, int k,
                std::uint64_t seed, int max_width, int max_height,
                const std::string& selection, long prec, const Output& out) {
    mpfr_prec_t p = prec > 0 ? prec : 256;
    BigFloat target = parse_real_expr(mu_expr, p);

    auto finish = [&](const ShearerRun<double>& run) {
        std::string text;
        if (!run.caterpillar.empty()) {
            text += "r = [";
            for (std::size_t i = 0; i < run.caterpillar.size(); ++i)
                text += (i ? "," : "") + std::to_string(run.caterpillar[i]);
            text += "]\n";
        }
        text += "stars = " + run.tree().str() + "\n";
        char b[64];
        text += "S = [";
        for (std::size_t i = 0; i < run.s_trace.size(); ++i) {
            std::snprintf(b, sizeof b, "%s%.9f", i ? "," : "", run.s_trace[i]);
            text += b;
        }
        text += "]\nradii = [";
        for (std::size_t i = 0; i < run.radii.size(); ++i) {
            std::snprintf(b, sizeof b, "%s%.9f", i ? "," : "", run.radii[i]);
            text += b;
        }
        text += "]\n";
        if (run.experimental) text += "note: target below the construction's proven domain\n";
        out.emit(to_json(run), text);
    };

    if (mode == "classic") {
        finish(classic_laplacian(target.to_double(), k));
    } else if (mode == "adjacency") {
        finish(classic_adjacency(target.to_double(), k));
    } else if (mode == "random") {
        GeneratorPolicy policy;
        policy.max_width = max_width;
        policy.max_height = max_height;
        policy.rng_seed = seed;
        if (selection == "max-drift") policy.selection = StarSelection::MaximizeDrift;
        else if (selection == "uniform") policy.selection = StarSelection::UniformRandom;
        else throw std::domain_error("unknown selection '" + selection + "'");
        finish(generalized_random(target.to_double(), k, policy));
    } else {
        throw std::domain_error("unknown mode '" + mode + "'");
    }
    return 0;
}

int cmd_limit(const std::string& spec_arg, const std::string& family, int kmax, double tol,
              long prec, double window_lo, double window_hi, const Output& out) {
    mpfr_prec_t p = prec > 0 ? prec : 256;
    SequenceSpec spec;
    if (!family.empty()) {
        if (family != "one-k-k") throw std::domain_error("unknown family '" + family + "'");
        spec = one_k_k_family(kmax);
    } else {
        spec = spec_from_arg(spec_arg);
    }
    LimitEstimate est = estimate_limit(spec, kmax, tol);
    char b[256];
    std::snprintf(b, sizeof b, "estimate = %.12f\ncauchy_gap = %.3e\n", est.gamma,
                  est.cauchy_gap);
    std::string text = b;
    json j = to_json(est);
    j["spec"] = spec_literal(spec);

    AlgebraicOptions opts{kmax, tol, p};
    if (family.empty() && spec.tail_kind == TailKind::ZeroTail &&
        spec.closing == ClosingRule::ShiftOfT) {
        AlgebraicLimit al = algebraic_limit(spec, opts);
        j["algebraic"] = to_json(al);
        if (al.degenerate) {
            text += "algebraic: " + al.note + "\n";
        } else {
            std::snprintf(b, sizeof b, "defining polynomial: %s\nroot = %s\n",
                          al.defining.str("x").c_str(), al.selected_root.str(14).c_str());
            text += b;
        }
    } else if (family.empty() && spec.tail_kind == TailKind::ConstantTail) {
        Starlike closing = (spec.closing == ClosingRule::ExplicitList)
                               ? spec.closing_list.front()
                               : spec.tail_stars.front();
        double lo = window_lo > 0 ? window_lo : std::max(4.000001, est.gamma - 0.5);
        double hi = window_hi > 0 ? window_hi : est.gamma + 1.0;
        AlgebraicLimit al =
            constant_tail_limit(spec.prefix, spec.tail_stars.front(), closing, lo, hi, opts);
        j["algebraic"] = to_json(al);
        std::snprintf(b, sizeof b, "defining polynomial: %s\nroot = %s\n",
                      al.defining.str("x").c_str(), al.selected_root.str(14).c_str());
        text += b;
    }
    out.emit(j, text);
    return 0;
}

int cmd_certify(const std::string& mu_expr, const std::string& spec_arg,
                const std::string& idx_csv, int k, long prec, bool with_epsilon,
                const Output& out) {
    mpfr_prec_t p = prec > 0 ? prec : 256;
    BigFloat mu = parse_real_expr(mu_expr, std::max<mpfr_prec_t>(p, 256));
    SequenceSpec spec = spec_from_arg(spec_arg);
    std::vector<int> idx = parse_index_list(idx_csv);
    if (idx.empty()) throw std::domain_error("certify requires --idx");
    int horizon = k > 0 ? k : *std::max_element(idx.begin(), idx.end());

    Certificate cert = alpha_certificate(spec, mu, horizon, {p, 8192, true});
    std::string text;
    json jalpha = json::object(), jx = json::object();
    for (int j : idx) {
        if (j < 1 || j > horizon) throw std::domain_error("index out of range");
        text += "alpha_" + std::to_string(j) + " = " + cert.alpha[j - 1].str(12) + "\n";
        jalpha[std::to_string(j)] = cert.alpha[j - 1].str();
        jx[std::to_string(j)] = cert.X[j - 1].str();
    }
    text += std::string("verdict: ") +
            (cert.verdict == Verdict::ConvergesToMu ? "converges-to-mu" : "stalled-below") +
            " (evidence " + cert.verdict_evidence.str(12) + ")\n";
    text += "precision_bits = " + std::to_string(cert.precision_bits) + "\n";
    json j = to_json(cert);
    j["alpha"] = jalpha;
    j["X"] = jx;
    if (with_epsilon) {
        auto eps = epsilon_sequence(spec, mu, horizon, idx, cert.precision_bits);
        json je = json::object();
        for (auto& [ji, v] : eps) {
            text += "epsilon_" + std::to_string(ji) + " = " + v.str(12) + "\n";
            je[std::to_string(ji)] = v.str();
        }
        j["epsilon"] = je;
    }
    out.emit(j, text);
    return 0;
}

int cmd_sample_f1(int n, int K, std::uint64_t seed, int threads, const std::string& out_path) {
    std::vector<F1Record> records = sample_f1(n, K, seed, threads);
    std::string csv = f1_csv(records);
    if (out_path.empty() || out_path == "-") {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << csv;
    }
    F1Summary s = f1_summary(records);
    std::printf("n=%d K=%d radii in [%.9f, %.9f]\n", n, K, s.min_radius, s.max_radius);
    if (n > 1) std::printf("min_gap = %.6e\nmax_gap = %.6e\n", s.min_gap, s.max_gap);
    return 0;
}

int cmd_nasty(bool verify, int k, int samples, long prec, const Output& out) {
    mpfr_prec_t p = prec > 0 ? prec : 256;
    NastyInterval ni = nasty_interval(p);
    char b[512];
    std::snprintf(b, sizeof b,
                  "mu*       = %s  (largest root of %s)\nmu*_upper = %s  (largest root of %s)\n",
                  ni.mu_star.str(20).c_str(), ni.lower_poly.str("x").c_str(),
                  ni.mu_star_upper.str(20).c_str(), ni.upper_poly.str("x").c_str());
    std::string text = b;
    json j{{"schema", "laplim/nasty-interval/1"},
           {"mu_star", ni.mu_star.str()},
           {"mu_star_upper", ni.mu_star_upper.str()},
           {"lower_poly", poly_json(ni.lower_poly)},
           {"upper_poly", poly_json(ni.upper_poly)}};
    if (verify) {
        double lo = ni.mu_star.to_double() + 1e-6, hi = ni.mu_star_upper.to_double() - 1e-6;
        bool all_ok = true;
        for (int i = 0; i < samples; ++i) {
            double mu = lo + (hi - lo) * i / std::max(samples - 1, 1);
            bool ok = verify_nasty(mu, k);
            all_ok = all_ok && ok;
            std::snprintf(b, sizeof b, "mu=%.9f k=%d -> %s\n", mu, k,
                          ok ? "[3,1,...,1,2]" : "DIFFERENT");
            text += b;
        }
        j["verified"] = all_ok;
        text += all_ok ? "all samples frozen to [3,1,...,1,2]\n" : "some sample differed\n";
    }
    out.emit(j, text);
    return 0;
}

int cmd_reference(int n_max, long prec, const Output& out) {
    mpfr_prec_t p = prec > 0 ? prec : 256;
    ReferenceConstants rc = reference_constants(n_max, p);
    std::string text;
    char b[256];
    std::snprintf(b, sizeof b, "guo_omega     = %s\nguo_limit     = %s\nhoffman_tau   = %s\nhoffman_limit = %s\n",
                  rc.guo_omega.str(20).c_str(), rc.guo_limit.str(20).c_str(),
                  rc.hoffman_tau.str(20).c_str(), rc.hoffman_limit.str(20).c_str());
    text += b;
    json ja = json::array(), jh = json::array();
    for (std::size_t i = 0; i < rc.guo_alpha.size(); ++i) {
        std::snprintf(b, sizeof b, "alpha_%zu = %s\n", i, rc.guo_alpha[i].str(20).c_str());
        text += b;
        ja.push_back(rc.guo_alpha[i].str());
    }
    for (std::size_t i = 0; i < rc.hoffman_alpha_bar.size(); ++i) {
        std::snprintf(b, sizeof b, "alpha-bar_%zu = %s\n", i + 1,
                      rc.hoffman_alpha_bar[i].str(20).c_str());
        text += b;
        jh.push_back(rc.hoffman_alpha_bar[i].str());
    }
    json j{{"schema", "laplim/reference-constants/1"},
           {"guo_omega", rc.guo_omega.str()},
           {"guo_limit", rc.guo_limit.str()},
           {"hoffman_tau", rc.hoffman_tau.str()},
           {"hoffman_limit", rc.hoffman_limit.str()},
           {"guo_alpha", ja},
           {"hoffman_alpha_bar", jh}};
    out.emit(j, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplacian spectral radii and limit points of linear trees"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Output out;
    app.add_option("--format", out.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--output", out.path, "write the result to a file");

    long prec = 0;
    app.add_option("--precision", prec, "big-float mantissa bits (0: double backend)");

    std::string tree_lit, kind_s = "laplacian", x_expr, mu_expr, mode = "classic";
    std::string spec_arg, family, idx_csv, selection = "max-drift", out_path;
    double tol = 1e-12, window_lo = 0, window_hi = 0, limit_tol = 1e-9;
    int k = 0, kmax = 100, max_width = 6, max_height = 2, n = 100, K = 100;
    int samples = 20, n_max = 10, threads = 1;
    std::uint64_t seed = 0;
    bool caterpillar = false, verify = false, with_epsilon = false;

    auto* c_radius = app.add_subcommand("radius", "spectral radius of a tree literal");
    c_radius->add_option("tree", tree_lit, "tree literal, e.g. [[1],[1,2]]")->required();
    c_radius->add_flag("--caterpillar", caterpillar, "read the literal as flat leaf counts");
    c_radius->add_option("--kind", kind_s, "laplacian|signless|adjacency");
    c_radius->add_option("--tol", tol, "bisection tolerance (double backend)");

    auto* c_diag = app.add_subcommand("diagonalize", "congruent diagonal at a probe");
    c_diag->add_option("tree", tree_lit)->required();
    c_diag->add_option("--x", x_expr, "probe value added to the diagonal")->required();
    c_diag->add_option("--kind", kind_s);

    auto* c_shearer = app.add_subcommand("shearer", "target-chasing tree sequences");
    c_shearer->add_option("--mode", mode, "classic|adjacency|random")->required();
    c_shearer->add_option("--mu", mu_expr, "target (lambda in adjacency mode)")->required();
    c_shearer->add_option("--k", k, "sequence length")->required();
    c_shearer->add_option("--seed", seed);
    c_shearer->add_option("--max-width", max_width);
    c_shearer->add_option("--max-height", max_height);
    c_shearer->add_option("--selection", selection, "max-drift|uniform");

    auto* c_limit = app.add_subcommand("limit", "limit of the radius sequence of a spec");
    c_limit->add_option("--spec", spec_arg, "spec literal or alias (lemma34, genetic-29)");
    c_limit->add_option("--family", family, "named family: one-k-k");
    c_limit->add_option("--kmax", kmax);
    c_limit->add_option("--tol", limit_tol);
    c_limit->add_option("--window-lo", window_lo);
    c_limit->add_option("--window-hi", window_hi);

    auto* c_cert = app.add_subcommand("certify", "alpha/X certificate streams");
    c_cert->add_option("--mu", mu_expr, "target, expression allowed")->required();
    c_cert->add_option("--spec", spec_arg)->required();
    c_cert->add_option("--idx", idx_csv, "comma-separated indices")->required();
    c_cert->add_option("--k", k, "horizon (default max(idx)+1)");
    c_cert->add_flag("--epsilon", with_epsilon, "also solve the exact eps_j roots");

    auto* c_sample = app.add_subcommand("sample-f1", "sample the width-bounded family");
    c_sample->add_option("--n", n)->required();
    c_sample->add_option("--K", K)->required();
    c_sample->add_option("--seed", seed);
    c_sample->add_option("--threads", threads);
    c_sample->add_option("--out", out_path, "CSV path ('-' for stdout)");

    auto* c_nasty = app.add_subcommand("nasty-interval", "the frozen caterpillar interval");
    c_nasty->add_flag("--verify", verify, "re-run the construction across the interval");
    c_nasty->add_option("--k", k, "length for verification runs");
    c_nasty->add_option("--samples", samples);

    auto* c_ref = app.add_subcommand("reference-constants", "classical limit-point ladders");
    c_ref->add_option("--n-max", n_max);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_radius->parsed())
            return cmd_radius(tree_lit, caterpillar, kind_s, tol, prec, out);
        if (c_diag->parsed()) return cmd_diagonalize(tree_lit, x_expr, kind_s, out);
        if (c_shearer->parsed())
            return cmd_shearer(mode, mu_expr, k, seed, max_width, max_height, selection, prec,
                               out);
        if (c_limit->parsed())
            return cmd_limit(spec_arg, family, kmax, limit_tol, prec, window_lo, window_hi, out);
        if (c_cert->parsed())
            return cmd_certify(mu_expr, spec_arg, idx_csv, k, prec, with_epsilon, out);
        if (c_sample->parsed()) return cmd_sample_f1(n, K, seed, threads, out_path);
        if (c_nasty->parsed())
            return cmd_nasty(verify, k > 0 ? k : 50, samples, prec, out);
        if (c_ref->parsed()) return cmd_reference(n_max, prec, out);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitParse;
    } catch (const PrecisionCapReached& e) {
        std::fprintf(stderr, "precision cap: %s\n", e.what());
        return kExitPrecisionCap;
    } catch (const InconsistencyError& e) {
        std::fprintf(stderr, "inconsistency: %s\n", e.what());
        return kExitInconsistent;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitDomain;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
