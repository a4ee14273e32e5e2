#include "mechlab/harness.hpp"

#include <cmath>
#include <sstream>

#include "mechlab/eranalytics.hpp"

namespace mechlab {

namespace {

double ratio_double(const Rational& num, const Rational& den) {
    if (den == 0) return 0.0;
    return to_double(num / den);
}

BoundCheck assert_check(const std::string& name, const Rational& lhs, const Rational& rhs) {
    // lhs >= rhs
    BoundCheck c;
    c.name = name;
    c.applicable = true;
    c.passed = lhs >= rhs;
    c.slack = to_double(lhs - rhs);
    return c;
}

BoundCheck report_only(const std::string& name, double value) {
    BoundCheck c;
    c.name = name;
    c.applicable = true;
    c.asserted = false;
    c.passed = true;
    c.slack = value;
    return c;
}

BoundCheck not_applicable(const std::string& name) {
    BoundCheck c;
    c.name = name;
    return c;
}

}  // namespace

std::vector<BoundCheck> verify_all(const RevenueReport& r) {
    std::vector<BoundCheck> checks;
    const bool multi = r.k >= 2;
    const bool iid = multi && r.identical_items;
    const double kd = static_cast<double>(r.k);
    const ERConstants er = solve_constants();

    // revenue ordering against the LP optimum and the expected value
    if (r.rev_opt) {
        checks.push_back(assert_check("rev_ge_srev", *r.rev_opt, r.srev));
        checks.push_back(assert_check("rev_ge_brev", *r.rev_opt, r.brev));
        checks.push_back(assert_check("rev_le_val", r.value, *r.rev_opt));
    } else {
        checks.push_back(assert_check("srev_le_val", r.value, r.srev));
        checks.push_back(assert_check("brev_le_val", r.value, r.brev));
    }

    // Theorem 1: SRev >= Rev/2 for two items.
    if (r.k == 2 && r.rev_opt)
        checks.push_back(assert_check("thm1_srev_ge_half_rev", 2 * r.srev, *r.rev_opt));
    else
        checks.push_back(not_applicable("thm1_srev_ge_half_rev"));

    // Theorem 2: 2 Rev1(F) >= e/(e+1) Rev(FxF); float constant with 1e-12 slack.
    if (r.k == 2 && iid && r.rev_opt)
        checks.push_back(assert_check("thm2_iid_e_over_e1", 2 * r.item_rev1,
                                      rational_from_double(er.iid_bound - 1e-12) * *r.rev_opt));
    else
        checks.push_back(not_applicable("thm2_iid_e_over_e1"));

    // Theorems 3/4 have unpinned constants; report the normalized ratios.
    if (multi && r.rev_opt)
        checks.push_back(report_only("thm3_ratio_srev_rev_times_log2k",
                                     ratio_double(r.srev, *r.rev_opt) * std::pow(std::log(kd), 2)));
    else
        checks.push_back(not_applicable("thm3_ratio_srev_rev_times_log2k"));
    if (iid && r.rev_opt)
        checks.push_back(report_only("thm4_ratio_brev_rev_times_logk",
                                     ratio_double(r.brev, *r.rev_opt) * std::log(kd)));
    else
        checks.push_back(not_applicable("thm4_ratio_brev_rev_times_logk"));

    // Bundling upper bound for two items: BRev <= (1+w) SRev.
    if (r.k == 2)
        checks.push_back(assert_check("lem37i_brev_le_1pw_srev",
                                      rational_from_double(er.sep_bun_ratio + 1e-12) * r.srev,
                                      r.brev));
    else
        checks.push_back(not_applicable("lem37i_brev_le_1pw_srev"));

    // Bundling lower bounds.
    if (multi)
        checks.push_back(
            assert_check("lem38_brev_ge_srev_over_k", Rational(static_cast<long>(r.k)) * r.brev,
                         r.srev));
    else
        checks.push_back(not_applicable("lem38_brev_ge_srev_over_k"));
    if (r.k == 2 && iid)
        checks.push_back(
            assert_check("lem39_brev_ge_4_3_rev1", 3 * r.brev, 4 * r.item_rev1));
    else
        checks.push_back(not_applicable("lem39_brev_ge_4_3_rev1"));
    if (iid)
        checks.push_back(assert_check("lem310_brev_ge_k_4_rev1", 4 * r.brev,
                                      Rational(static_cast<long>(r.k)) * r.item_rev1));
    else
        checks.push_back(not_applicable("lem310_brev_ge_k_4_rev1"));
    if (multi && r.rev_opt)
        checks.push_back(assert_check("lem51_brev_ge_rev_over_3km2",
                                      Rational(static_cast<long>(3 * r.k - 2)) * r.brev,
                                      *r.rev_opt));
    else
        checks.push_back(not_applicable("lem51_brev_ge_rev_over_3km2"));
    return checks;
}

RevenueReport report(const ProductDist& p, const std::string& name, const ReportOptions& opts) {
    RevenueReport r;
    r.name = name;
    r.k = p.k();
    r.srev = srev(p);
    r.brev = brev(p, opts.max_atoms).revenue;
    r.value = val(p);
    r.identical_items = true;
    for (std::size_t i = 1; i < p.k(); ++i)
        if (!(p.items[i] == p.items[0])) r.identical_items = false;
    r.item_rev1 = rev1(p.items[0]).revenue;
    if (opts.run_lp) r.rev_opt = solve_optimal(p, opts.mode, opts.max_types).value;
    r.checks = verify_all(r);
    return r;
}

RevenueReport example_1k(const Rational& M, std::size_t k, const ReportOptions& opts) {
    if (M <= 1) throw Error(ErrorKind::BadGrid, "need M > 1");
    if (k < 2) throw Error(ErrorKind::BadGrid, "need k >= 2");
    std::vector<DiscreteDist> items;
    Rational mi = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        mi *= M;  // M^i
        const Rational pi = 1 / mi;
        items.push_back(DiscreteDist::make({Rational(0), mi}, {1 - pi, pi}));
    }
    ProductDist p(std::move(items));
    ReportOptions o = opts;
    // LP only when the 2^k type space fits the cap
    if ((std::size_t(1) << k) > o.max_types) o.run_lp = false;
    RevenueReport r = report(p, "example_near_1_over_k", o);

    BoundCheck srev_eq;
    srev_eq.name = "example_srev_eq_k";
    srev_eq.applicable = true;
    srev_eq.passed = (r.srev == Rational(static_cast<long>(k)));
    srev_eq.slack = to_double(r.srev - Rational(static_cast<long>(k)));
    r.checks.push_back(srev_eq);

    const Rational bound = 1 + 1 / (M - 1);
    r.checks.push_back(assert_check("example_brev_le_bound", bound, r.brev));
    return r;
}

Example57Result example_57(std::size_t k) {
    if (k < 2) throw Error(ErrorKind::BadGrid, "need k >= 2");
    const double c = solve_constants().c57;
    // small-denominator rational pin of the constant keeps the exact binomial cheap
    const Rational c_rat(static_cast<long>(std::llround(c * 1000000)), 1000000L);
    const Rational p = c_rat / static_cast<long>(k);

    const BigInt a = numerator(p);
    const BigInt d = denominator(p);
    const BigInt b = d - a;
    BigInt D = 1;  // d^k
    for (std::size_t i = 0; i < k; ++i) D *= d;
    BigInt N = 1;  // running numerator of P(X = j) over D; starts at b^k
    for (std::size_t i = 0; i < k; ++i) N *= b;

    Example57Result res;
    res.srev = c_rat;
    BigInt S = 0;  // cumulative numerator of P(X < t)
    BigInt best = 0;
    for (std::size_t t = 1; t <= k; ++t) {
        S += N;  // add P(X = t-1)
        const BigInt tail = D - S;
        if (tail <= 0) break;
        const BigInt candidate = BigInt(static_cast<long>(t)) * tail;
        if (candidate > best) best = candidate;
        if (t == 1) res.price1_revenue = Rational(tail, D);
        if (t == 2) res.price2_revenue = Rational(candidate, D);
        // later prices t' satisfy t' * tail' <= k * tail; stop once that cannot win
        if (BigInt(static_cast<long>(k)) * tail <= best) break;
        // N <- N * a (k-t+1... next atom): P(t) = P(t-1) * (k-t+1)/t * a/b
        N = N * a * BigInt(static_cast<long>(k - t + 1)) / (b * BigInt(static_cast<long>(t)));
    }
    res.brev = Rational(best, D);
    res.ratio = res.brev / res.srev;
    return res;
}

bool bundling_optimality_condition(const std::vector<std::array<double, 3>>& density_samples,
                                   double a, double slack) {
    for (const auto& s : density_samples) {
        const double x = s[0], f = s[1], fp = s[2];
        if (x <= a) throw Error(ErrorKind::BadGrid, "density sample at or below the support floor");
        if (x * fp + 1.5 * f > slack) return false;
    }
    return true;
}

DiscreteDist power_law_discretized(double gamma, double M, std::size_t n) {
    if (gamma <= 1 || M <= 1 || n < 2)
        throw Error(ErrorKind::BadGrid, "need gamma > 1, M > 1, n >= 2");
    // density (gamma-1) x^-gamma on [1, inf); cdf 1 - x^(1-gamma)
    auto cdf_tail = [&](double x) { return std::pow(x, 1.0 - gamma); };
    std::vector<Rational> sup, probs;
    sup.reserve(n);
    probs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double g = std::pow(M, static_cast<double>(i) / (n - 1));
        const double next =
            (i + 1 < n) ? std::pow(M, static_cast<double>(i + 1) / (n - 1)) : M;
        double mass = cdf_tail(g) - cdf_tail(next);
        if (i + 1 == n) mass = cdf_tail(g);  // fold the residual tail into the last atom
        sup.push_back(rational_from_double(g));
        probs.push_back(rational_from_double(mass));
    }
    return DiscreteDist::make(std::move(sup), std::move(probs));
}

BundlingGap bundling_optimality_numeric_check(double gamma, double M, std::size_t n,
                                              SolveMode mode, std::size_t max_types) {
    const DiscreteDist d = power_law_discretized(gamma, M, n);
    const ProductDist p = ProductDist::iid(d, 2);
    BundlingGap g;
    g.rev_opt = solve_optimal(p, mode, max_types).value;
    g.brev = brev(p).revenue;
    g.gap = g.rev_opt - g.brev;
    return g;
}

std::vector<LimitRow> limit_check(const DiscreteDist& d, const std::vector<std::size_t>& ks,
                                  std::size_t max_atoms) {
    std::vector<LimitRow> rows;
    rows.reserve(ks.size());
    const Rational e = expectation(d);
    for (std::size_t k : ks) {
        if (k == 0) throw Error(ErrorKind::BadGrid, "k must be >= 1");
        const Rational b = rev1(convolve_power(d, k, max_atoms)).revenue;
        rows.push_back({k, b / static_cast<long>(k), e});
    }
    return rows;
}

Rational group_decomposition_slack(const ProductDist& p, std::size_t split, SolveMode mode,
                                   std::size_t max_types) {
    if (split == 0 || split >= p.k())
        throw Error(ErrorKind::ShapeMismatch, "split must leave both groups nonempty");
    ProductDist x(std::vector<DiscreteDist>(p.items.begin(), p.items.begin() + split));
    ProductDist y(std::vector<DiscreteDist>(p.items.begin() + split, p.items.end()));
    const Rational rev_xy = solve_optimal(p, mode, max_types).value;
    const Rational rev_x = solve_optimal(x, mode, max_types).value;
    const Rational rev_y = solve_optimal(y, mode, max_types).value;
    const Rational brev_x = brev(x).revenue;
    const Rational brev_y = brev(y).revenue;
    return rev_x + rev_y + brev_x + brev_y - rev_xy;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

std::string reports_to_csv(const std::vector<RevenueReport>& reports) {
    std::ostringstream os;
    os << "name,k,srev,brev,rev_opt,val,srev_over_rev,brev_over_rev,brev_over_srev,"
          "checks_passed,checks_total\r\n";
    for (const auto& r : reports) {
        std::size_t passed = 0, total = 0;
        for (const auto& c : r.checks) {
            if (!c.applicable || !c.asserted) continue;
            ++total;
            if (c.passed) ++passed;
        }
        os << csv_field(r.name) << ',' << r.k << ',' << to_string(r.srev) << ','
           << to_string(r.brev) << ',' << (r.rev_opt ? to_string(*r.rev_opt) : "") << ','
           << to_string(r.value) << ',';
        if (r.rev_opt) {
            os << to_string(r.srev / *r.rev_opt) << ',' << to_string(r.brev / *r.rev_opt) << ',';
        } else {
            os << ",,";
        }
        os << (r.srev != 0 ? to_string(r.brev / r.srev) : "") << ',' << passed << ',' << total
           << "\r\n";
    }
    return os.str();
}

}  // namespace mechlab
