// One PASS/FAIL line per acceptance criterion; detail lines are indented.
#include "bohm/charpoly.hpp"
#include "bohm/classify.hpp"
#include "bohm/enumerate.hpp"
#include "bohm/height.hpp"
#include "bohm/render.hpp"
#include "bohm/spectra.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

using namespace bohm;

namespace {

using Row = std::vector<long long>;

std::string str(const Row& r) {
    std::string s = "(";
    for (std::size_t k = 0; k < r.size(); ++k) s += (k ? ", " : "") + std::to_string(r[k]);
    return s + ")";
}

long long ll(const BigInt& b) { return b.get_si(); }

int failures = 0;

void note(const std::string& s) { std::cout << "    " << s << '\n'; }

bool check_row(const std::string& what, const Row& got, const Row& want) {
    const bool ok = got == want;
    note(what + ": got " + str(got) + (ok ? "" : " want " + str(want)) + (ok ? " ok" : " MISMATCH"));
    return ok;
}

void verdict(int id, bool ok, const std::string& title, double seconds) {
    if (!ok) ++failures;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", seconds);
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << title << "  [" << buf << "]\n"
              << std::flush;
}

class Timer {
public:
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Databases are built once, serially, and shared between criteria.
std::map<std::string, Cpdb> db_cache;
std::map<std::string, SpectrumSummary> spectrum_cache;
std::map<std::string, ClassReport> report_cache;

const Cpdb& db(const FamilySpec& spec) {
    const auto key = to_string(spec);
    auto it = db_cache.find(key);
    if (it == db_cache.end()) {
        EnumOptions o;
        o.budget = 50'000'000;
        it = db_cache.emplace(key, spec.shape == Shape::General ? build_general_cpdb(spec) : build_cpdb(spec, o)).first;
    }
    return it->second;
}

const ClassReport& report(const FamilySpec& spec) {
    const auto key = to_string(spec);
    auto it = report_cache.find(key);
    if (it == report_cache.end()) it = report_cache.emplace(key, classify_database(db(spec))).first;
    return it->second;
}

const SpectrumSummary& spectrum(const FamilySpec& spec) {
    const auto key = to_string(spec);
    auto it = spectrum_cache.find(key);
    if (it == spectrum_cache.end()) it = spectrum_cache.emplace(key, summarize_spectrum(db(spec))).first;
    return it->second;
}

FamilySpec Z(int n) { return make_hessenberg(n, "-1,0,1", 1, true); }
FamilySpec H(int n) { return make_hessenberg(n, "-1,0,1", 1); }
FamilySpec H01(int n) { return make_hessenberg(n, "0,1", 1); }
FamilySpec Hpm(int n) { return make_hessenberg(n, "-1,1", 1); }

template <class F>
Row over(int lo, int hi, F f) {
    Row r;
    for (int n = lo; n <= hi; ++n) r.push_back(f(n));
    return r;
}

void criterion1() {
    Timer t;
    struct Fam {
        const char* pop;
        long s;
        bool zero;
        const char* complex_s;
    };
    const std::vector<Fam> fams{
        {"-1,0,1", 1, false, nullptr}, {"-1,0,1", -1, false, nullptr}, {"-1,0,1", 1, true, nullptr},
        {"0,1", 1, false, nullptr},    {"-1,1", -1, false, nullptr},   {"0,i,-i", 1, true, nullptr},
        {"0,i,-i", 1, false, "i"},     {"-2,-1,0,1,2", 1, false, nullptr}, {"1,i,-1-i", 1, false, "-i"},
    };
    std::uint64_t checked = 0, bad = 0;
    std::size_t families = 0;
    for (const auto& f : fams) {
        for (int n = 1;; ++n) {
            FamilySpec spec = make_hessenberg(n, f.pop, f.s, f.zero);
            if (f.complex_s) spec.subdiag = parse_gauss_int(f.complex_s);
            if (family_size(spec) > 100000) break;
            ++families;
            enumerate_family(spec, [&](const HessMatrix& m, const CharPoly& incremental) {
                ++checked;
                const auto a = charpoly_thm1(m), b = charpoly_thm2(m), c = charpoly_oracle(m);
                if (!(a == b && b == c && c == incremental)) ++bad;
            });
        }
    }
    note(std::to_string(families) + " families of size <= 1e5, " + std::to_string(checked) +
         " matrices, mismatches " + std::to_string(bad));
    verdict(1, bad == 0 && t.seconds() < 60, "recurrences agree with the determinant oracle", t.seconds());
}

void criterion2() {
    Timer t;
    bool ok = check_row("matrices", over(2, 6, [](int n) { return ll(db(Z(n)).total_matrices()); }),
                        {3, 27, 729, 59049, 14348907});
    ok &= check_row("cpolys", over(2, 6, [](int n) { return (long long)db(Z(n)).size(); }), {3, 15, 140, 2297, 67628});
    ok &= check_row("neutral polys", over(2, 6, [](int n) { return (long long)report(Z(n)).neutral_polys; }),
                    {2, 3, 7, 11, 25});
    ok &= check_row("neutral matrices", over(2, 6, [](int n) { return ll(report(Z(n)).neutral_matrices); }),
                    {2, 6, 66, 1069, 45375});
    verdict(2, ok, "zero-diagonal {-1,0,1} table", t.seconds());
}

void criterion3() {
    Timer t;
    bool ok = check_row("cpolys", over(2, 5, [](int n) { return (long long)db(H(n)).size(); }), {16, 166, 3317, 133255});
    ok &= check_row("neutral polys", over(2, 5, [](int n) { return (long long)report(H(n)).neutral_polys; }),
                    {2, 3, 7, 11});
    // listed in the table but not part of this criterion
    check_row("neutral matrices", over(2, 5, [](int n) { return ll(report(H(n)).neutral_matrices); }),
              {4, 24, 332, 9909});
    verdict(3, ok, "{-1,0,1} full-diagonal table", t.seconds());
}

void criterion4() {
    Timer t;
    bool ok = check_row("cpolys", over(2, 6, [](int n) { return (long long)db(H01(n)).size(); }),
                        {6, 28, 197, 2235, 39768});
    ok &= check_row("neutral polys", over(2, 6, [](int n) { return (long long)report(H01(n)).neutral_polys; }),
                    {1, 1, 1, 1, 1});
    bool only_zn = true;
    for (int n = 2; n <= 6; ++n)
        db(H01(n)).for_each([&](const CpdbRecord& r) {
            const auto p = r.poly();
            if (is_neutral(p) && !is_nilpotent(p)) only_zn = false;
        });
    note(std::string("the neutral polynomial is z^n: ") + (only_zn ? "yes" : "NO"));
    ok &= only_zn;
    ok &= check_row("distinct real eigenvalues",
                    over(2, 6, [](int n) { return (long long)spectrum(H01(n)).distinct_real; }),
                    {6, 25, 219, 3264, 75045});
    verdict(4, ok, "{0,1} table", t.seconds());
}

void criterion5() {
    Timer t;
    bool ok = check_row("cpolys", over(2, 6, [](int n) { return (long long)db(Hpm(n)).size(); }),
                        {6, 32, 289, 4958, 162059});
    ok &= check_row("stable polys", over(2, 6, [](int n) { return (long long)report(Hpm(n)).stable_polys; }),
                    {1, 3, 14, 93, 992});
    ok &= check_row("stable matrices", over(2, 6, [](int n) { return ll(report(Hpm(n)).stable_matrices); }),
                    {1, 4, 28, 424, 11613});
    ok &= check_row("distinct real eigenvalues",
                    over(2, 6, [](int n) { return (long long)spectrum(Hpm(n)).distinct_real; }),
                    {5, 29, 233, 7363, 299477});
    verdict(5, ok, "{-1,+1} table", t.seconds());
}

void criterion6() {
    Timer t;
    bool ok = check_row("stable matrices", over(2, 5, [](int n) { return ll(report(H(n)).stable_matrices); }),
                        {4, 44, 1386, 130735});
    verdict(6, ok, "Type I stable counts", t.seconds());
}

void criterion7() {
    Timer t;
    bool ok = check_row("zero-diagonal {-1,0,1}", over(2, 6, [](int n) { return ll(report(Z(n)).nilpotent_matrices); }),
                        {1, 3, 21, 271, 9075});
    ok &= check_row("{0,1}", over(2, 6, [](int n) { return ll(report(H01(n)).nilpotent_matrices); }), {1, 1, 1, 1, 1});
    ok &= check_row("{-1,+1}", over(2, 6, [](int n) { return ll(report(Hpm(n)).nilpotent_matrices); }),
                    {2, 0, 0, 0, 324});
    verdict(7, ok, "nilpotent counts", t.seconds());
}

void criterion8() {
    Timer t;
    struct Table {
        const char* name;
        FamilySpec (*family)(int);
        std::vector<Row> rows; // n = 2..6
    };
    const std::vector<Table> tables{
        {"zero-diagonal {-1,0,1}", Z,
         {{5, 1}, {35, 0, 1}, {431, 5, 0, 1}, {9497, 9, 3, 0, 1}, {363143, 51, 5, 1, 0, 1}}},
        {"{0,1}", H01, {{6, 2}, {43, 2, 2}, {413, 6, 2, 2}, {6920, 6, 3, 2, 2}, {166005, 45, 6, 2, 2, 2}}},
        {"{-1,+1}", Hpm, {{9, 1}, {65, 0, 0}, {689, 5, 0, 0}, {20565, 3, 0, 0, 0}, {887539, 59, 9, 1, 1, 1}}},
    };
    bool ok = true;
    for (const auto& tab : tables) {
        for (int n = 2; n <= 6; ++n) {
            const auto& s = spectrum(tab.family(n));
            Row got(s.by_class.counts.begin() + 1, s.by_class.counts.end());
            const Row& want = tab.rows[static_cast<std::size_t>(n - 2)];
            const std::string label = std::string(tab.name) + " n=" + std::to_string(n);
            if (n <= 5) {
                ok &= check_row(label, got, want);
            } else {
                note(label + " (extended, not gated): got " + str(got) + (got == want ? " ok" : " want " + str(want)));
            }
            if (got != want) {
                std::ostringstream os;
                os << "  distinct overall " << s.distinct_eigenvalues << "; multiple-only eigenvalues:";
                for (auto z : s.multiple_only) os << ' ' << z;
                note(os.str());
            }
        }
    }
    verdict(8, ok, "multiplicity tables, n <= 5", t.seconds());
}

void criterion9() {
    Timer t;
    bool ok = check_row("general {-1,0,1} singular",
                        over(1, 3, [](int n) { return ll(report(make_general(n, "-1,0,1")).singular_matrices); }),
                        {1, 33, 7875});
    ok &= check_row("{-1,+1} n=6 singular", {ll(report(Hpm(6)).singular_matrices)}, {383680});
    verdict(9, ok, "singular counts", t.seconds());
}

void criterion10() {
    Timer t;
    bool ok = true;
    for (const char* pop : {"-1,0,1", "0,i,-i"}) {
        Row counts;
        bool shapes_ok = true;
        for (int n = 3; n <= 8; ++n) {
            const auto found = find_normal_matrices(make_hessenberg(n, pop, 1, true));
            counts.push_back(static_cast<long long>(found.size()));
            for (const auto& m : found)
                shapes_ok &= classify_normal_shape(m, true).kind != NormalShapeKind::Other;
        }
        ok &= check_row(std::string("normal matrices over {") + pop + "}, n=3..8", counts, {4, 4, 4, 4, 4, 4});
        note(std::string("shapes ") + (shapes_ok ? "all symmetric, w-skew symmetric or w-skew circulant" : "OTHER FOUND"));
        ok &= shapes_ok;
        // the pruned search against a plain scan where that is feasible
        for (int n = 3; n <= 5; ++n) {
            const auto spec = make_hessenberg(n, pop, 1, true);
            std::size_t brute = 0;
            enumerate_family(spec, [&](const HessMatrix& m, const CharPoly&) { brute += is_normal(m); });
            const bool same = brute == find_normal_matrices(spec).size();
            if (!same) note("plain scan disagrees at n=" + std::to_string(n));
            ok &= same;
        }
    }
    // n = 4 over {0, i, -i}: the i- and -i-skew symmetric and skew circulant matrices
    auto spec = std::make_shared<const FamilySpec>(make_hessenberg(4, "0,i,-i", 1, true));
    std::vector<HessMatrix> expected;
    for (const GaussInt w : {GaussInt(0, 1), GaussInt(0, -1)}) {
        std::vector<GaussInt> skew(spec->storage_size()), circ(spec->storage_size());
        for (int j = 2; j <= 4; ++j) skew[upper_slot(j - 1, j)] = w;
        circ[upper_slot(1, 4)] = w;
        expected.emplace_back(spec, skew);
        expected.emplace_back(spec, circ);
    }
    auto found = find_normal_matrices(*spec);
    bool listed = found.size() == expected.size();
    for (const auto& e : expected) listed &= std::find(found.begin(), found.end(), e) != found.end();
    note(std::string("n=4 {0,i,-i} is exactly the four w-skew matrices: ") + (listed ? "yes" : "NO"));
    verdict(10, ok && listed, "normal matrices of zero-diagonal families", t.seconds());
}

void criterion11() {
    Timer t;
    bool ok = true;
    std::vector<FamilySpec> zero_diag;
    for (int n = 2; n <= 6; ++n) zero_diag.push_back(Z(n));
    for (int n = 2; n <= 6; ++n) zero_diag.push_back(make_hessenberg(n, "0,1", 1, true));
    for (int n = 2; n <= 6; ++n) zero_diag.push_back(make_hessenberg(n, "-1,0,1", -1, true));
    for (int n = 2; n <= 4; ++n) zero_diag.push_back(make_hessenberg(n, "-2,-1,0,1,2", 1, true));
    std::size_t stable = 0;
    for (const auto& spec : zero_diag) stable += report(spec).stable_polys;
    note(std::to_string(zero_diag.size()) + " zero-diagonal families, Type I stable polynomials: " +
         std::to_string(stable));
    ok &= stable == 0;
    // Type II: inside the unit circle with margin 1e-8 exactly when nilpotent
    std::size_t families = 0, polys = 0, bad = 0;
    for (const auto& [key, cp] : db_cache) {
        if (cp.empty() || !parse_family_spec(key).population.is_real()) continue;
        ++families;
        for (const auto& [rec, rs] : solve_database(cp)) {
            ++polys;
            const bool inside = rs.spectral_radius() < 1.0 - 1e-8;
            if (inside != is_nilpotent(rec->poly())) ++bad;
        }
    }
    note("Type II check over " + std::to_string(families) + " enumerated families, " + std::to_string(polys) +
         " polynomials, disagreements with nilpotency: " + std::to_string(bad));
    ok &= bad == 0;
    verdict(11, ok, "no stable zero-diagonal members; Type II stable iff nilpotent", t.seconds());
}

void criterion12() {
    Timer t;
    bool ok = true;
    auto compare = [&](const std::string& label, const std::optional<double>& got, double want, double tol) {
        const bool good = got && std::abs(*got - want) <= tol;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: got %.6g want %.4g +- %.0e %s", label.c_str(), got ? *got : NAN, want, tol,
                      good ? "ok" : "MISMATCH");
        note(buf);
        ok &= good;
    };
    const double h_want[] = {-0.5, -1.226e-1, -1.591e-2, -5.176e-4};
    const double h_tol[] = {5e-1, 5e-4, 5e-5, 5e-7};
    for (int n = 2; n <= 5; ++n)
        compare("{-1,0,1} n=" + std::to_string(n), max_real_part(db(H(n)), RealPartFilter::StableOnly),
                h_want[n - 2], h_tol[n - 2]);
    const double b_want[] = {-1, -0.5, -2.168e-2, -2.66e-3, -1.70e-4};
    const double b_tol[] = {5, 5e-1, 5e-5, 5e-5, 5e-6};
    for (int n = 2; n <= 6; ++n)
        compare("{-1,+1} n=" + std::to_string(n), max_real_part(db(Hpm(n)), RealPartFilter::StableOnly),
                b_want[n - 2], b_tol[n - 2]);
    verdict(12, ok, "maximum real part of stable members", t.seconds());
}

void criterion13() {
    Timer t;
    bool ok = true;
    Row heights;
    for (int n = 1; n <= 5; ++n) {
        const auto rep = verify_max_height(n);
        heights.push_back(ll(rep.max_height));
        ok &= rep.ok();
        if (!rep.ok()) note("max height check failed at n=" + std::to_string(n));
    }
    note("maximal characteristic heights n=1..5 " + str(heights) + ", attained by the witness and the pattern matrices");
    const auto s = tau_series(2000, HeightMode::LogFloat);
    double worst = 0;
    int worst_n = 0;
    for (int n = 500; n < s.size(); ++n) {
        const double d = std::abs(s.log_ratio(n) - log_one_plus_phi());
        if (d > worst) {
            worst = d;
            worst_n = n;
        }
    }
    const int onset = convergence_onset(s, 1e-3);
    char buf[200];
    std::snprintf(buf, sizeof buf, "log tau_{n+1} - log tau_n vs %.10f: worst deviation on n >= 500 is %.3e at n=%d",
                  log_one_plus_phi(), worst, worst_n);
    note(buf);
    note("within 1e-3 from n=" + std::to_string(onset) + " on (through n=" + std::to_string(s.size() - 1) + ")");
    const auto g = estimate_growth_constant(s);
    std::snprintf(buf, sizeof buf, "tau_2000 / (1+phi)^2000 = %.4g, times sqrt(2000) = %.4g", g.plain, g.sqrt_corrected);
    note(buf);
    ok &= worst <= 1e-3;
    verdict(13, ok, "characteristic height growth", t.seconds());
}

void criterion14() {
    Timer t;
    bool ok = true;
    for (long sub : {1L, -1L}) {
        const auto& cp = db(make_hessenberg(5, "-1,0,1", sub, true));
        DensityGrid g(-3.5, 3.5, -3.5, 3.5, 2047, 2047);
        accumulate(g, cp);
        std::uint64_t weighted = 0;
        cp.for_each([&](const CpdbRecord& r) { weighted += r.matrix_count.get_ui() * static_cast<std::uint64_t>(r.degree()); });
        std::size_t conj_bad = 0, neg_bad = 0;
        for (int y = 0; y < g.height; ++y)
            for (int x = 0; x < g.width; ++x) {
                conj_bad += g.at(x, y) != g.at(x, g.height - 1 - y);
                neg_bad += g.at(x, y) != g.at(g.width - 1 - x, g.height - 1 - y);
            }
        const bool total = g.total() + g.overflow == weighted;
        note("s=" + std::to_string(sub) + ": 2047x2047 on [-3.5,3.5]^2, hits " + std::to_string(g.total()) +
             " + overflow " + std::to_string(g.overflow) + (total ? " = " : " != ") + std::to_string(weighted) +
             ", conjugation mismatches " + std::to_string(conj_bad) + ", negation mismatches " +
             std::to_string(neg_bad));
        ok &= total && conj_bad == 0 && neg_bad == 0;
    }
    verdict(14, ok, "density grid symmetry and totals", t.seconds());
}

void criterion15() {
    Timer t;
    std::size_t compared = 0, differ = 0;
    for (const auto& [key, serial] : db_cache) {
        const auto spec = parse_family_spec(key);
        if (spec.shape == Shape::General) continue;
        EnumOptions o;
        o.budget = 50'000'000;
        o.shards = 8;
        o.threads = 8;
        std::ostringstream a, b;
        serial.write(a);
        build_cpdb(spec, o).write(b);
        ++compared;
        if (a.str() != b.str()) {
            ++differ;
            note("differs: " + key);
        }
    }
    note(std::to_string(compared) + " databases rebuilt with 8 shards, byte-identical: " +
         std::to_string(compared - differ));
    verdict(15, differ == 0, "shard-count independence", t.seconds());
}

} // namespace

int main() {
    std::cout << "acceptance criteria\n";
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    criterion13();
    criterion14();
    criterion15();
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed")) << '\n';
    return failures ? 1 : 0;
}
