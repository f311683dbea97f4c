// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qpnls/cli.hpp"
#include "qpnls/parallel.hpp"
#include "qpnls/picard.hpp"
#include "qpnls/qp_function.hpp"
#include "qpnls/random.hpp"
#include "qpnls/resonance.hpp"
#include "qpnls/schrodinger.hpp"

using namespace qpnls;

namespace {

constexpr unsigned kWide = 4;

struct Table {
    std::string text;
    std::vector<std::vector<std::string>> rows;  // without the header row
    std::map<std::string, std::string> summary;
};

Table run_cli(std::vector<std::string> args, unsigned workers) {
    args.insert(args.end(), {"--workers", std::to_string(workers)});
    std::ostringstream out, err;
    if (cli::run(args, out, err) > cli::kFailure) throw std::runtime_error("qpnls " + args[0] + ": " + err.str());
    Table t{out.str(), {}, {}};
    std::istringstream in(t.text);
    bool header = true;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("# ", 0) == 0) {
            auto colon = line.find(": ");
            if (colon != std::string::npos) t.summary[line.substr(2, colon - 2)] = line.substr(colon + 2);
            continue;
        }
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
        t.rows.push_back(cells);
    }
    return t;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail) {
    if (!pass) ++failures;
    std::printf("criterion %d: %s  %s | %s\n", id, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
    char buf[1024];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

const std::vector<std::string> kApqArgs = {"apq-audit", "--box", "12"};
const std::vector<std::string> kStrichartzArgs = {"strichartz-verify", "--samples", "200", "--max-support", "40",
                                                  "--coord-max", "30", "--seed", "0"};
const std::vector<std::string> kGammaArgs = {"gamma-count", "--k", "0,0", "--N", "8,16,32,64"};
const std::vector<std::string> kConstructArgs = {"gamma-construct", "--k", "0,0", "--N", "16,64"};

std::map<std::string, Table> serial;

void criterion1() {
    auto start = std::chrono::steady_clock::now();
    Table t = run_cli(kApqArgs, 1);
    serial["apq"] = t;
    const double secs = seconds_since(start);
    const long mismatches = std::stol(t.summary.at("mismatches"));
    const long max_card = std::stol(t.summary.at("max_cardinality"));
    report(1, mismatches == 0 && max_card <= 4 && secs < 60, "A_{p,q} exhaustive audit, box 12",
           fmt("pairs=%s keys=%s mismatches=%ld max_cardinality=%ld (<= 4) time=%.2fs (< 60s)",
               t.summary.at("ordered_pairs").c_str(), t.summary.at("keys").c_str(), mismatches, max_card, secs));
}

void criterion2() {
    auto start = std::chrono::steady_clock::now();
    Table t = run_cli(kStrichartzArgs, 1);
    serial["strichartz"] = t;
    const double bound = std::pow(4.0, 0.25) + 1e-9;
    double max_ratio = 0;
    for (const auto& row : t.rows) max_ratio = std::max(max_ratio, std::stod(row.at(4)));

    // Single-frequency data: 200 random frequencies and amplitudes.
    AuditRng rng(1);
    double single_dev = 0;
    for (int i = 0; i < 200; ++i) {
        const QPFunction g = random_qp_function(rng, 1, 30);
        single_dev = std::max(single_dev, std::fabs(strichartz_ratio(g) - 1.0));
    }
    const double secs = seconds_since(start);
    const bool pass = t.rows.size() == 200 && max_ratio <= bound && single_dev <= 1e-12 && secs < 30;
    report(2, pass, "Strichartz constant",
           fmt("samples=%zu max_ratio=%.12f (<= %.12f) single_frequency_max_dev=%.2e (<= 1e-12) time=%.2fs (< 30s)",
               t.rows.size(), max_ratio, bound, single_dev, secs));
}

void criterion3() {
    auto start = std::chrono::steady_clock::now();
    const QPFunction u0 = cosine_pair_datum();
    const QPFunction two{{OmegaElement{1, 0}, Complex(1, 0)}, {OmegaElement{0, 1}, Complex(1, 0)}};
    std::string detail;
    bool pass = true;
    for (const auto& [name, g] : {std::pair{"u0", u0}, std::pair{"two-frequency", two}}) {
        const double exact = strichartz_l4_norm(g);
        const double approx = l4_norm_ergodic_crosscheck(g, 1e3, 1e3, 20000, default_workers());
        const double rel = std::fabs(approx - exact) / exact;
        pass = pass && rel <= 0.05;
        detail += fmt("%s: resonant=%.6f ergodic=%.6f rel=%.2e; ", name, exact, approx, rel);
    }
    const double secs = seconds_since(start);
    pass = pass && secs < 300;
    report(3, pass, "resonant-sum identity vs ergodic average, T = L = 1000", detail + fmt("time=%.2fs (< 300s)", secs));
}

void criterion4() {
    auto start = std::chrono::steady_clock::now();
    bool pass = true;
    for (const auto& s : pell_sequence(20)) pass = pass && satisfies_pell(s.a, s.c);
    std::string detail = fmt("first 20 satisfy a^2-2c^2=1: %s; ", pass ? "yes" : "no");
    for (double n : {1e2, 1e4, 1e6, 1e9}) {
        const auto got = static_cast<long long>(pell_solutions(BigInt(static_cast<long long>(n))).size());
        const auto expected = static_cast<long long>(pell_count_estimate(n));
        pass = pass && std::llabs(got - expected) <= 1;
        detail += fmt("N=%.0e count=%lld estimate=%lld; ", n, got, expected);
    }
    const double secs = seconds_since(start);
    pass = pass && secs < 1;
    report(4, pass, "Pell solutions", detail + fmt("time=%.3fs (< 1s)", secs));
}

void criterion5() {
    auto start = std::chrono::steady_clock::now();
    Table counts = run_cli(kGammaArgs, 1);
    Table built = run_cli(kConstructArgs, 1);
    serial["gamma"] = counts;
    serial["construct"] = built;

    std::vector<double> ns, cs;
    for (const auto& row : counts.rows) {
        ns.push_back(std::stod(row.at(0)));
        cs.push_back(std::stod(row.at(1)));
    }
    bool strictly_increasing = true, ratio_increasing = true;
    std::string seq;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        seq += fmt("N=%.0f: %.0f (%.4f/N^2) ", ns[i], cs[i], cs[i] / (ns[i] * ns[i]));
        if (i > 0) {
            strictly_increasing = strictly_increasing && cs[i] > cs[i - 1];
            ratio_increasing = ratio_increasing && cs[i] / (ns[i] * ns[i]) > cs[i - 1] / (ns[i - 1] * ns[i - 1]);
        }
    }
    // Least-squares slope of count/N^2 against log N.
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        mx += std::log(ns[i]) / ns.size();
        my += cs[i] / (ns[i] * ns[i]) / ns.size();
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double dx = std::log(ns[i]) - mx;
        sxy += dx * (cs[i] / (ns[i] * ns[i]) - my);
        sxx += dx * dx;
    }
    const double slope = sxy / sxx;

    // Pointwise membership of the constructed family, re-checked here.
    bool members = true;
    std::size_t size16 = 0, size64 = 0;
    for (long long n : {16LL, 64LL}) {
        const auto quads = gamma_lower_bound_construct({0, 0}, n);
        for (const auto& q : quads) members = members && in_gamma(q, n, Rational(1));
        (n == 16 ? size16 : size64) = quads.size();
    }
    const bool cli_agrees = built.rows.size() == 2 && std::stoull(built.rows[0].at(1)) == size16 &&
                            std::stoull(built.rows[1].at(1)) == size64;
    const bool superquadratic = size64 > 16 * size16;
    const double secs = seconds_since(start);

    const bool pass = strictly_increasing && ratio_increasing && slope > 0 && members && cli_agrees &&
                      superquadratic && secs < 600;
    std::string detail = seq + fmt("| strictly increasing: %s; count/N^2 increasing: %s; slope of count/N^2 vs log N: "
                                   "%.4f; construction in Gamma: %s; |construct(64)|=%zu > 16*|construct(16)|=%zu: %s; "
                                   "time=%.2fs (< 600s)",
                                   strictly_increasing ? "yes" : "no", ratio_increasing ? "yes" : "no", slope,
                                   members ? "yes" : "no", size64, 16 * size16, superquadratic ? "yes" : "no", secs);
    report(5, pass, "Gamma(0, N) growth with |Phi| <= 1", detail);

    // Supplementary, not graded: the same counts with |Phi| <= 2, i.e. |Phi/2| <= 1.
    Table wide = run_cli({"gamma-count", "--k", "0,0", "--N", "8,16,32,64", "--phi-bound", "2"}, default_workers());
    std::string info;
    for (const auto& row : wide.rows) info += fmt("N=%s: %s (%s/N^2) ", row[0].c_str(), row[1].c_str(), row[2].c_str());
    std::printf("  note: with |Phi| <= 2 the counts are %s\n", info.c_str());
}

void criterion6() {
    auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (long long m : {100LL, 1000LL}) {
        const auto pts = strip_points(m, Rational(1));
        std::set<std::pair<Int, Int>> got(pts.begin(), pts.end());
        std::set<std::pair<Int, Int>> oracle;
        for (long long p = -m; p <= m; ++p)
            for (long long q = -m; q <= m; ++q)
                if (abs_leq({p, q}, Rational(1))) oracle.insert({p, q});
        const auto n = static_cast<long long>(pts.size());
        const bool ok = got.size() == pts.size() && got == oracle && n >= 2 * m && n <= 3 * (2 * m + 1);
        pass = pass && ok;
        detail += fmt("M=%lld count=%lld in [%lld, %lld], oracle %s; ", m, n, 2 * m, 3 * (2 * m + 1),
                      got == oracle ? "matches" : "differs");
    }
    const double secs = seconds_since(start);
    pass = pass && secs < 10;
    report(6, pass, "strip counting", detail + fmt("time=%.2fs (< 10s)", secs));
}

void criterion7() {
    auto start = std::chrono::steady_clock::now();
    AuditRng rng(0);
    const QPFunction random4 = random_qp_function(rng, 4, 5);
    bool pass = true;
    std::string detail;
    for (const auto& [name, u] : {std::pair{"u0", cosine_pair_datum()}, std::pair{"random 4-frequency", random4}}) {
        const double dev = max_coefficient_deviation(picard_first_iterate(u, 1.0), quadrature_oracle(u, 1.0, 2.0, 10000));
        pass = pass && dev <= 1e-8;
        detail += fmt("%s: max deviation %.2e (<= 1e-8); ", name, dev);
    }
    const double secs = seconds_since(start);
    pass = pass && secs < 30;
    report(7, pass, "Picard closed form vs Simpson oracle, t = 1, 10^4 steps", detail + fmt("time=%.2fs (< 30s)", secs));
}

void criterion8() {
    auto start = std::chrono::steady_clock::now();
    const QPFunction u0 = cosine_pair_datum();
    auto err = [&](double L) {
        const double v = lp_norm_estimate(u0, 2, L, default_steps(u0.max_abs_frequency(), L)).value;
        return std::fabs(v * v - 1.0);
    };
    const double e2 = err(1e2), e4 = err(1e4);
    const double secs = seconds_since(start);
    report(8, e4 <= 1e-2 && e4 < e2 && secs < 60, "Plancherel convergence for u0",
           fmt("|est^2 - 1| at L=1e2: %.3e, at L=1e4: %.3e (<= 1e-2 and decreasing) time=%.2fs (< 60s)", e2, e4, secs));
}

void criterion9() {
    auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
        {"apq", kApqArgs}, {"strichartz", kStrichartzArgs}, {"gamma", kGammaArgs}, {"construct", kConstructArgs}};
    bool pass = true;
    std::string detail;
    for (const auto& [name, args] : runs) {
        const Table wide = run_cli(args, kWide);
        const bool same = wide.text == serial.at(name).text;
        pass = pass && same;
        detail += fmt("%s: %s; ", args[0].c_str(), same ? "identical" : "DIFFERENT");
    }
    report(9, pass, "determinism across workers {1, 4}", detail + fmt("time=%.2fs", seconds_since(start)));
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false, "error", e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
