#include "qpnls/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "qpnls/io.hpp"
#include "qpnls/omega.hpp"
#include "qpnls/parallel.hpp"
#include "qpnls/picard.hpp"
#include "qpnls/qp_function.hpp"
#include "qpnls/random.hpp"
#include "qpnls/resonance.hpp"
#include "qpnls/schrodinger.hpp"

namespace qpnls::cli {

namespace {

using nlohmann::json;

struct Table {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::uint64_t seed = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    std::vector<std::pair<std::string, json>> summary;
};

std::string render(const json& v) {
    if (v.is_null()) return "nan";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.15g", v.get<double>());
        return buf;
    }
    return v.dump();
}

void emit(const Table& table, const std::string& format, std::ostream& out) {
    if (format == "json") {
        json config = json::object();
        for (const auto& [k, v] : table.config) config[k] = v;
        json rows = json::array();
        for (const auto& row : table.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = row[i];
            rows.push_back(obj);
        }
        json summary = json::object();
        for (const auto& [k, v] : table.summary) summary[k] = v;
        json doc = {{"provenance",
                     {{"tool", "qpnls"}, {"version", kVersion}, {"command", table.command}, {"config", config},
                      {"seed", table.seed}}},
                    {"columns", table.columns},
                    {"rows", rows},
                    {"summary", summary}};
        out << doc.dump(2) << '\n';
        return;
    }
    out << "# qpnls " << kVersion << '\n';
    out << "# command: " << table.command << '\n';
    out << "# config:";
    for (const auto& [k, v] : table.config) out << ' ' << k << '=' << v;
    out << '\n';
    out << "# seed: " << table.seed << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render(row[i]);
        out << '\n';
    }
    for (const auto& [k, v] : table.summary) out << "# " << k << ": " << render(v) << '\n';
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json normalized(double value, long long n) {
    if (n <= 1) return nullptr;
    const double nn = static_cast<double>(n);
    return value / (nn * nn * std::log(nn));
}

std::int64_t as_i64(Int v) { return static_cast<std::int64_t>(v); }

struct Common {
    std::string output;
    std::string format = "csv";
    unsigned workers = default_workers();
    std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Common& common) {
    sub->add_option("-o,--output", common.output, "Write the table to this file instead of stdout");
    sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", common.workers, "Worker threads (default: $QPNLS_WORKERS or 1); output is independent of it")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "Seed for generated data");
}

QPFunction load_input(const std::string& path) {
    return path.empty() ? cosine_pair_datum() : read_qp_function(path);
}

std::string input_label(const std::string& path) { return path.empty() ? "cosine-pair-datum" : path; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qpnls: exact resonance computations for Schrödinger flows with frequencies in Z + sqrt(2) Z"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Common common;

    // strichartz-verify
    std::size_t samples = 200, max_support = 40;
    long long coord_max = 30;
    auto* sv = app.add_subcommand("strichartz-verify",
                                  "Audit the L^4_{t,x} Strichartz ratio ||S(t)g||_{L^4} / ||g||_{L^2} <= 4^(1/4) "
                                  "on seeded random quasiperiodic data g");
    sv->add_option("--samples", samples, "Number of random g")->check(CLI::PositiveNumber);
    sv->add_option("--max-support", max_support, "Support size is drawn from 1..max")->check(CLI::PositiveNumber);
    sv->add_option("--coord-max", coord_max, "Frequency coordinates in [-m, m]")->check(CLI::NonNegativeNumber);
    add_common(sv, common);

    // apq-audit
    long long box = 12;
    auto* aq = app.add_subcommand("apq-audit",
                                  "Check the quartic enumeration of the resonant pair sets A_{p,q} against brute-force "
                                  "grouping of all pairs in a coordinate box; reports the largest |A_{p,q}|");
    aq->add_option("--box", box, "Coordinates in [-box, box]")->check(CLI::NonNegativeNumber);
    add_common(aq, common);

    // gamma-count
    std::string k_text = "0,0", phi_bound_text = "1";
    std::vector<long long> ns;
    long long max_n = kDefaultMaxN;
    std::string quad_path;
    auto* gc = app.add_subcommand("gamma-count",
                                  "Exhaustive count of the resonant set Gamma(k,N) = {k1 - k2 + k3 = k, boxes <= N, "
                                  "|Phi| <= bound}");
    gc->add_option("--k", k_text, "Output frequency, \"kx,ky\" or \"kx+ky√2\"");
    gc->add_option("--N", ns, "Box size(s), comma separated")->required()->delimiter(',')->check(CLI::NonNegativeNumber);
    gc->add_option("--phi-bound", phi_bound_text, "Bound on |Phi|, rational (e.g. 1 or 1/2)");
    gc->add_option("--max-n", max_n, "Override the enumeration cap on N")->check(CLI::PositiveNumber);
    gc->add_option("--emit-quadruples", quad_path, "Also write every quadruple as CSV to this file");
    add_common(gc, common);

    // gamma-construct
    bool include_trivial = false;
    auto* gk = app.add_subcommand("gamma-construct",
                                  "Build the Pell-equation family of near-resonant quadruples inside Gamma(k,N) and "
                                  "verify each member");
    gk->add_option("--k", k_text, "Output frequency, \"kx,ky\" or \"kx+ky√2\"");
    gk->add_option("--N", ns, "Box size(s), comma separated")->required()->delimiter(',')->check(CLI::PositiveNumber);
    gk->add_option("--phi-bound", phi_bound_text, "Bound on |Phi|, rational");
    gk->add_flag("--include-trivial-pell", include_trivial, "Admit the solution (1, 0)");
    gk->add_option("--emit-quadruples", quad_path, "Also write every quadruple as CSV to this file");
    add_common(gk, common);

    // pell
    std::string pell_max = "100";
    auto* pl = app.add_subcommand("pell", "Solutions of Pell's equation a^2 - 2c^2 = 1 from the seed (3, 2)");
    pl->add_option("--max", pell_max, "Largest coordinate (arbitrary precision)")->required();
    pl->add_flag("--include-trivial", include_trivial, "Prepend (1, 0)");
    add_common(pl, common);

    // strip
    long long strip_max = 100;
    std::string strip_bound_text = "1";
    bool count_only = false;
    auto* st = app.add_subcommand("strip", "Integer points (p, q) of the strip |p + sqrt(2) q| <= bound, |p|,|q| <= M");
    st->add_option("--max", strip_max, "M")->required()->check(CLI::NonNegativeNumber);
    st->add_option("--bound", strip_bound_text, "Strip half-width, rational");
    st->add_flag("--count-only", count_only, "Only report the count");
    add_common(st, common);

    // picard
    std::string input_path, json_out, split_text = "1";
    double t = 1.0, lambda = kDefaultNonlinearity;
    std::size_t oracle_steps = 0;
    auto* pc = app.add_subcommand("picard",
                                  "First Picard iterate g(t) = lambda int_0^t S(t-s)(|S(s)u0|^2 S(s)u0) ds of cubic NLS, "
                                  "per frequency, tagged by near-resonance |Phi| <= bound");
    pc->add_option("--input", input_path, "u0 in the function JSON format (default: cos x + cos sqrt(2) x)");
    pc->add_option("--t", t, "Time");
    pc->add_option("--lambda", lambda, "Nonlinearity coefficient");
    pc->add_option("--split-bound", split_text, "Near-resonance bound on |Phi|, rational");
    pc->add_option("--oracle-steps", oracle_steps, "Also compare with Simpson quadrature on this many steps");
    pc->add_option("--json-out", json_out, "Write the iterate in the function JSON format");
    add_common(pc, common);

    // plancherel
    double p_exp = 2.0;
    std::vector<double> widths{100.0, 1000.0, 10000.0};
    std::size_t steps = 0;
    auto* pn = app.add_subcommand("plancherel",
                                  "Finite-window mean-value L^p norm ((1/2L) int_{-L}^{L} |u|^p)^(1/p) against the exact "
                                  "coefficient value");
    pn->add_option("--input", input_path, "u in the function JSON format (default: cos x + cos sqrt(2) x)");
    pn->add_option("--p", p_exp, "Exponent p >= 1")->check(CLI::Range(1.0, 1e6));
    pn->add_option("--L", widths, "Window half-widths, comma separated")->delimiter(',')->check(CLI::PositiveNumber);
    pn->add_option("--steps", steps, "Trapezoid steps (default: max|k| dx <= 0.1)");
    add_common(pn, common);

    // l4-crosscheck
    double time_width = 1000.0, space_width = 1000.0;
    std::size_t xsteps = 20000;
    auto* lc = app.add_subcommand("l4-crosscheck",
                                  "Compare the exact resonant-sum value of ||S(t)g||_{L^4_{t,x}} with a finite-window "
                                  "space-time average");
    lc->add_option("--input", input_path, "g in the function JSON format (default: cos x + cos sqrt(2) x)");
    lc->add_option("--T", time_width, "Time half-width")->check(CLI::PositiveNumber);
    lc->add_option("--L", space_width, "Space half-width")->check(CLI::PositiveNumber);
    lc->add_option("--steps", xsteps, "Trapezoid steps per axis")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 32));
    add_common(lc, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        Table table;
        table.seed = common.seed;
        int status = kOk;

        if (sv->parsed()) {
            table.command = "strichartz-verify";
            table.config = {{"samples", std::to_string(samples)},
                            {"max-support", std::to_string(max_support)},
                            {"coord-max", std::to_string(coord_max)}};
            table.columns = {"sample", "support", "l2_norm", "l4_norm", "ratio", "max_ratio"};
            const double bound = std::pow(4.0, 0.25);
            AuditRng rng(common.seed);
            double max_ratio = 0;
            std::size_t violations = 0;
            for (std::size_t i = 0; i < samples; ++i) {
                const std::size_t size = 1 + rng.below(max_support);
                QPFunction g = random_qp_function(rng, size, coord_max);
                const double l2 = l2_norm(g), l4 = strichartz_l4_norm(g, common.workers);
                const double ratio = l4 / l2;
                max_ratio = std::max(max_ratio, ratio);
                if (ratio > bound + 1e-9) ++violations;
                table.rows.push_back({i, g.size(), l2, l4, ratio, max_ratio});
            }
            table.summary = {{"max_ratio", max_ratio}, {"bound", bound}, {"violations", violations}};
            if (violations) status = kFailure;
        } else if (aq->parsed()) {
            table.command = "apq-audit";
            table.config = {{"box", std::to_string(box)}};
            table.columns = {"cardinality", "keys"};
            ApqAuditResult r = apq_audit(box, common.workers);
            for (auto [card, count] : r.cardinality_histogram) table.rows.push_back({card, count});
            table.summary = {{"ordered_pairs", r.ordered_pairs},
                             {"keys", r.keys},
                             {"max_cardinality", r.max_cardinality},
                             {"mismatches", r.mismatches}};
            if (r.mismatches || r.max_cardinality > 4) status = kFailure;
        } else if (gc->parsed() || gk->parsed()) {
            const bool construct = gk->parsed();
            const OmegaElement k = parse_omega(k_text);
            const Rational bound = Rational::parse(phi_bound_text);
            table.command = construct ? "gamma-construct" : "gamma-count";
            std::string n_list;
            for (auto n : ns) n_list += (n_list.empty() ? "" : ";") + std::to_string(n);
            table.config = {{"k", format(k, true)}, {"N", n_list}, {"phi-bound", bound.str()}};
            if (construct && include_trivial) table.config.emplace_back("include-trivial-pell", "true");
            table.columns = {"N", construct ? "size" : "count", construct ? "size_over_n2" : "count_over_n2",
                             construct ? "size_over_n2_logn" : "count_over_n2_logn"};

            std::ofstream quads;
            if (!quad_path.empty()) {
                quads.open(quad_path);
                if (!quads) throw IoError("cannot write " + quad_path);
                quads << "N,k1x,k1y,k2x,k2y,k3x,k3y,phix,phiy\n";
            }
            for (long long n : ns) {
                std::vector<ResonanceQuadruple> found;
                std::uint64_t count;
                if (construct) {
                    found = gamma_lower_bound_construct(k, n, {bound, include_trivial});
                    count = found.size();
                } else {
                    GammaOptions options{bound, common.workers, max_n, !quad_path.empty()};
                    GammaCount c = gamma_count_bruteforce(k, n, options);
                    count = c.count;
                    found = std::move(c.quadruples);
                }
                const double over_n2 = n > 0 ? static_cast<double>(count) / (static_cast<double>(n) * n) : 0.0;
                table.rows.push_back({n, count, n > 0 ? json(over_n2) : json(nullptr),
                                      normalized(static_cast<double>(count), n)});
                if (quads.is_open()) {
                    for (const auto& q : found) {
                        quads << n << ',' << to_string(q.k1.kx) << ',' << to_string(q.k1.ky) << ','
                              << to_string(q.k2.kx) << ',' << to_string(q.k2.ky) << ',' << to_string(q.k3.kx) << ','
                              << to_string(q.k3.ky) << ',' << to_string(q.phi.kx) << ',' << to_string(q.phi.ky)
                              << '\n';
                    }
                }
            }
        } else if (pl->parsed()) {
            table.command = "pell";
            BigInt limit;
            try {
                limit = BigInt(pell_max);
            } catch (const std::exception&) {
                throw std::invalid_argument("--max must be a decimal integer");
            }
            table.config = {{"max", pell_max}};
            if (include_trivial) table.config.emplace_back("include-trivial", "true");
            table.columns = {"index", "a", "c"};
            std::size_t i = 0;
            for (const auto& s : pell_solutions(limit, include_trivial))
                table.rows.push_back({++i, s.a.str(), s.c.str()});
            table.summary = {{"solutions", i}};
        } else if (st->parsed()) {
            table.command = "strip";
            const Rational bound = Rational::parse(strip_bound_text);
            table.config = {{"max", std::to_string(strip_max)}, {"bound", bound.str()}};
            table.columns = {"p", "q"};
            auto points = strip_points(strip_max, bound);
            if (!count_only)
                for (auto [p, q] : points) table.rows.push_back({as_i64(p), as_i64(q)});
            table.summary = {{"count", points.size()}};
        } else if (pc->parsed()) {
            table.command = "picard";
            const QPFunction u0 = load_input(input_path);
            const Rational bound = Rational::parse(split_text);
            table.config = {{"input", input_label(input_path)},
                            {"t", fmt_double(t)},
                            {"lambda", fmt_double(lambda)},
                            {"split-bound", bound.str()}};
            if (oracle_steps) table.config.emplace_back("oracle-steps", std::to_string(oracle_steps));
            table.columns = {"kx", "ky", "re", "im", "abs", "abs_near", "abs_far", "tag"};
            if (oracle_steps) table.columns.push_back("oracle_abs_dev");

            const QPFunction full = picard_first_iterate(u0, t, lambda, common.workers);
            const auto [near, far] = resonant_split(u0, t, lambda, bound);
            std::optional<QPFunction> oracle;
            if (oracle_steps) oracle = quadrature_oracle(u0, t, lambda, oracle_steps);

            std::set<OmegaElement> keys;
            for (const auto& f : {&full, &near, &far})
                for (const auto& kv : f->coeffs()) keys.insert(kv.first);
            double worst = 0;
            for (const auto& k : keys) {
                const Complex c = full.coefficient(k);
                const bool has_near = near.coeffs().count(k) > 0, has_far = far.coeffs().count(k) > 0;
                const char* tag = has_near && has_far ? "mixed" : has_near ? "near" : "far";
                std::vector<json> row{as_i64(k.kx), as_i64(k.ky), c.real(), c.imag(), std::abs(c),
                                      std::abs(near.coefficient(k)), std::abs(far.coefficient(k)), tag};
                if (oracle) {
                    const double dev = std::abs(c - oracle->coefficient(k));
                    worst = std::max(worst, dev);
                    row.push_back(dev);
                }
                table.rows.push_back(std::move(row));
            }
            const double full2 = std::pow(l2_norm(full), 2);
            table.summary = {{"l2_norm", l2_norm(full)},
                             {"near_mass_fraction", full2 > 0 ? std::pow(l2_norm(near), 2) / full2 : 0.0}};
            if (oracle) {
                worst = std::max(worst, max_coefficient_deviation(full, *oracle));
                table.summary.emplace_back("oracle_max_deviation", worst);
            }
            if (!json_out.empty()) write_qp_function(json_out, full);
        } else if (pn->parsed()) {
            table.command = "plancherel";
            const QPFunction u = load_input(input_path);
            table.config = {{"input", input_label(input_path)}, {"p", fmt_double(p_exp)}};
            if (steps) table.config.emplace_back("steps", std::to_string(steps));
            table.columns = {"L", "steps", "estimate", "estimate_at_quarter_L", "estimate_at_half_L", "exact",
                             "abs_error_pth_power"};
            const bool even = p_exp == std::floor(p_exp) && static_cast<long long>(p_exp) % 2 == 0;
            std::optional<double> exact;
            if (even) exact = even_lp_norm(u, static_cast<int>(p_exp));
            for (double L : widths) {
                const std::size_t n = steps ? steps : default_steps(u.max_abs_frequency(), L);
                LpEstimate e = lp_norm_estimate(u, p_exp, L, n);
                json ex = exact ? json(*exact) : json(nullptr);
                json errv = exact ? json(std::fabs(std::pow(e.value, p_exp) - std::pow(*exact, p_exp))) : json(nullptr);
                table.rows.push_back({L, n, e.value, e.at_quarter, e.at_half, ex, errv});
            }
        } else if (lc->parsed()) {
            table.command = "l4-crosscheck";
            const QPFunction g = load_input(input_path);
            table.config = {{"input", input_label(input_path)},
                            {"T", fmt_double(time_width)},
                            {"L", fmt_double(space_width)},
                            {"steps", std::to_string(xsteps)}};
            table.columns = {"resonant_sum", "ergodic", "rel_diff"};
            const double exact = strichartz_l4_norm(g, common.workers);
            const double approx = l4_norm_ergodic_crosscheck(g, time_width, space_width, xsteps, common.workers);
            table.rows.push_back({exact, approx, exact > 0 ? std::fabs(approx - exact) / exact : 0.0});
        }

        if (common.output.empty()) {
            emit(table, common.format, out);
        } else {
            std::ofstream file(common.output);
            if (!file) throw IoError("cannot write " + common.output);
            emit(table, common.format, file);
            if (!file) throw IoError("write failed for " + common.output);
        }
        return status;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << '\n';
        return kOverflow;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace qpnls::cli
