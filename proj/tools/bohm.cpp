#include "bohm/charpoly.hpp"
#include "bohm/classify.hpp"
#include "bohm/cpdb.hpp"
#include "bohm/enumerate.hpp"
#include "bohm/errors.hpp"
#include "bohm/family.hpp"
#include "bohm/height.hpp"
#include "bohm/render.hpp"
#include "bohm/spectra.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

using namespace bohm;

namespace {

enum Exit { Ok = 0, Mismatch = 1, Usage = 2, Guard = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FamilyFlags {
    std::string n = "";
    std::string pop = "-1,0,1";
    bool zero_diag = false;
    std::string subdiag = "1";
    bool general = false;
    std::vector<std::string> dbs;
};

struct RunFlags {
    std::size_t shards = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t budget = default_budget();
    std::string shard_range;
};

void add_family(CLI::App* app, FamilyFlags& f, bool allow_db) {
    app->add_option("--n", f.n, allow_db ? "Dimension, or a range a..b" : "Dimension");
    app->add_option("--pop", f.pop, "Population, e.g. -1,0,1 or 0,i,-i")->capture_default_str();
    app->add_flag("--zero-diag", f.zero_diag, "Fix the main diagonal at 0");
    app->add_option("--subdiag", f.subdiag, "Subdiagonal unit: +1, -1, i or -i")->capture_default_str();
    app->add_flag("--general", f.general, "Dense n x n family instead of upper Hessenberg");
    if (allow_db) app->add_option("--db", f.dbs, "Read CPDB file(s) instead of enumerating");
}

void add_run(CLI::App* app, RunFlags& r) {
    app->add_option("--shards", r.shards, "Worker shards (default: hardware threads)")->check(CLI::PositiveNumber);
    app->add_option("--budget", r.budget, "Maximum matrices to enumerate (BOHM_BUDGET)")->check(CLI::PositiveNumber);
    app->add_option("--shard-range", r.shard_range, "Only shards a:b of the split, for merged multi-run builds");
}

std::vector<int> dims(const std::string& text) {
    if (text.empty()) throw UsageError("--n is required");
    try {
        auto dots = text.find("..");
        if (dots == std::string::npos) return {std::stoi(text)};
        int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
        if (lo > hi) throw UsageError("empty range " + text);
        std::vector<int> out;
        for (int k = lo; k <= hi; ++k) out.push_back(k);
        return out;
    } catch (const std::logic_error&) {
        throw UsageError("bad dimension: " + text);
    }
}

FamilySpec spec_for(const FamilyFlags& f, int n) {
    if (f.general) return make_general(n, f.pop);
    std::string s = f.subdiag;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    FamilySpec spec{n, parse_population(f.pop), parse_gauss_int(s), f.zero_diag, Shape::UpperHessenberg};
    spec.validate();
    return spec;
}

EnumOptions enum_options(const RunFlags& r) {
    EnumOptions o;
    o.budget = r.budget;
    o.shards = r.shards;
    o.threads = static_cast<unsigned>(r.shards);
    if (!r.shard_range.empty()) {
        auto colon = r.shard_range.find(':');
        if (colon == std::string::npos) throw UsageError("--shard-range expects a:b");
        try {
            o.shard_range = std::make_pair(std::stoul(r.shard_range.substr(0, colon)),
                                           std::stoul(r.shard_range.substr(colon + 1)));
        } catch (const std::logic_error&) {
            throw UsageError("bad --shard-range " + r.shard_range);
        }
    }
    return o;
}

Cpdb read_db(const std::string& path) {
    if (!std::filesystem::exists(path)) throw UsageError("no such database: " + path);
    return Cpdb::read_file(path);
}

/// One database per requested dimension, or one per --db file.
std::vector<Cpdb> databases(const FamilyFlags& f, const RunFlags& r) {
    std::vector<Cpdb> out;
    if (!f.dbs.empty()) {
        for (const auto& p : f.dbs) out.push_back(read_db(p));
        return out;
    }
    for (int n : dims(f.n)) {
        auto spec = spec_for(f, n);
        out.push_back(spec.shape == Shape::General ? build_general_cpdb(spec) : build_cpdb(spec, enum_options(r)));
    }
    return out;
}

Cpdb single_database(const FamilyFlags& f, const RunFlags& r) {
    if (f.dbs.size() > 1) throw UsageError("expected a single --db");
    auto dbs = databases(f, r);
    if (dbs.size() != 1) throw UsageError("expected a single dimension");
    return std::move(dbs.front());
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
}

std::string fmt(double x, const char* spec = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

int family_degree(const Cpdb& db) {
    int n = 0;
    db.for_each([&](const CpdbRecord& r) { n = std::max(n, r.degree()); });
    return n;
}

// ---- subcommands ----

int cmd_enumerate(const FamilyFlags& f, const RunFlags& r, const std::string& out) {
    auto n = dims(f.n);
    if (n.size() != 1) throw UsageError("enumerate takes a single --n");
    auto spec = spec_for(f, n.front());
    Cpdb db = spec.shape == Shape::General ? build_general_cpdb(spec) : build_cpdb(spec, enum_options(r));
    if (!out.empty()) db.write_file(out);
    std::cout << "matrices=" << db.total_matrices() << " cpolys=" << db.size() << '\n';
    return Ok;
}

int cmd_classify(const FamilyFlags& f, const RunFlags& r, const std::string& csv, bool real_eigs, bool normal) {
    std::vector<ClassReport> rows;
    for (const auto& db : databases(f, r)) {
        rows.push_back(classify_database(db));
        if (real_eigs && rows.back().real_coefficients) rows.back().distinct_real_eigs = distinct_real_eigs(db);
    }
    std::cout << format_report_table(rows);
    if (!csv.empty()) open_out(csv) << format_report_csv(rows);
    if (normal) {
        if (f.general || !f.dbs.empty()) throw UsageError("--normal needs a Hessenberg family given by flags");
        for (int n : dims(f.n)) std::cout << "n=" << n << " normal=" << find_normal_matrices(spec_for(f, n)).size() << '\n';
    }
    return Ok;
}

int cmd_spectra(const FamilyFlags& f, const RunFlags& r, const std::string& csv, const std::string& eig_csv,
                double tol, bool grid_only) {
    Cpdb db = single_database(f, r);
    SpectraOptions o;
    o.tol = tol;
    o.exact_identification = !grid_only;
    o.threads = static_cast<unsigned>(r.shards);
    auto sum = summarize_spectrum(db, o);
    const auto& c = sum.by_class.counts;
    std::ostringstream line;
    for (std::size_t k = 1; k < c.size(); ++k) line << (k > 1 ? " " : "") << k << ':' << c[k];
    std::cout << line.str() << '\n';
    std::cout << "distinct=" << sum.distinct_eigenvalues << " distinct_real=" << sum.distinct_real << '\n';
    auto stable = max_real_part(db, RealPartFilter::StableOnly);
    std::cout << "max_real_part_stable=" << (stable ? fmt(*stable) : std::string("none")) << '\n';
    if (!csv.empty()) {
        auto os = open_out(csv);
        os << "n";
        for (std::size_t k = 1; k < c.size(); ++k) os << ",mult_" << k;
        os << ",distinct_real\n" << family_degree(db);
        for (std::size_t k = 1; k < c.size(); ++k) os << ',' << c[k];
        os << ',' << sum.distinct_real << '\n';
    }
    if (!eig_csv.empty()) {
        auto os = open_out(eig_csv);
        write_eigenvalue_csv(db, os, o);
    }
    return Ok;
}

int cmd_heights(int max_n, const std::string& mode, const std::string& out, double tol, int check_max) {
    const HeightMode m = mode == "exact" ? HeightMode::Exact : HeightMode::LogFloat;
    auto s = tau_series(max_n, m);
    const double last = s.log_ratio(max_n - 1);
    std::cout << "n=" << max_n - 1 << " log_ratio=" << fmt(last) << " limit=" << fmt(log_one_plus_phi())
              << " deviation=" << fmt(std::abs(last - log_one_plus_phi()), "%.3e") << '\n';
    const int onset = convergence_onset(s, tol);
    std::cout << "onset(" << fmt(tol, "%g") << ")=";
    if (std::abs(s.log_ratio(onset) - log_one_plus_phi()) <= tol) std::cout << onset << '\n';
    else std::cout << "none\n";
    auto g = estimate_growth_constant(s);
    std::cout << "C=" << fmt(g.plain) << " C_sqrt_n=" << fmt(g.sqrt_corrected) << '\n';
    if (m == HeightMode::Exact) std::cout << "tau_" << max_n << '=' << s.taus.back() << '\n';
    if (!out.empty()) {
        auto os = open_out(out);
        write_tau_csv(s, os);
    }
    int rc = Ok;
    for (int n = 1; n <= check_max; ++n) {
        auto rep = verify_max_height(n);
        std::cout << "n=" << n << " max_height=" << rep.max_height << " witness=" << rep.witness_height
                  << " attaining=" << rep.attaining.size() << " outside_pattern_free_corner="
                  << rep.outside_pattern_free_corner << (rep.ok() ? " ok" : " MISMATCH") << '\n';
        if (!rep.ok()) rc = Mismatch;
    }
    return rc;
}

struct RenderFlags {
    int width = 2048, height = 2048;
    std::vector<double> window{-3.5, 3.5, -3.5, 3.5};
    double gamma = 0.5;
    std::string palette = "gray", weighting = "count", out, bins_csv;
};

int cmd_render(const FamilyFlags& f, const RunFlags& r, const RenderFlags& rf) {
    if (rf.window.size() != 4) throw UsageError("--window expects re_min,re_max,im_min,im_max");
    DensityGrid grid(rf.window[0], rf.window[1], rf.window[2], rf.window[3], rf.width, rf.height);
    for (const auto& db : databases(f, r)) {
        DensityGrid part(rf.window[0], rf.window[1], rf.window[2], rf.window[3], rf.width, rf.height);
        accumulate(part, db, rf.weighting == "unit" ? Weighting::Unit : Weighting::ByMatrixCount,
                   static_cast<unsigned>(r.shards));
        grid.merge(part);
    }
    write_image(grid, rf.palette == "fire" ? Palette::Fire : Palette::Gray, rf.gamma, rf.out);
    if (!rf.bins_csv.empty()) {
        auto os = open_out(rf.bins_csv);
        write_bins_csv(grid, os);
    }
    std::cout << "hits=" << grid.total() << " overflow=" << grid.overflow << " max=" << grid.max_hits() << '\n';
    return Ok;
}

int cmd_db_merge(const std::vector<std::string>& inputs, const std::string& out) {
    if (inputs.empty()) throw UsageError("db merge needs input files");
    Cpdb acc = read_db(inputs.front());
    for (std::size_t k = 1; k < inputs.size(); ++k) acc.merge(read_db(inputs[k]));
    acc.write_file(out);
    std::cout << "matrices=" << acc.total_matrices() << " cpolys=" << acc.size() << '\n';
    return Ok;
}

int cmd_db_query(const std::string& path, const std::string& filter, bool list) {
    Cpdb db = read_db(path);
    std::function<bool(const CharPoly&)> pred;
    if (filter == "all") pred = [](const CharPoly&) { return true; };
    else if (filter == "stable") pred = [](const CharPoly& p) { return p.is_real() && is_stable_type1(p); };
    else if (filter == "neutral") pred = [](const CharPoly& p) { return p.is_real() && is_neutral(p); };
    else if (filter == "nilpotent") pred = is_nilpotent;
    else pred = is_singular;
    auto [records, matrices] = db.query(pred);
    std::cout << "records=" << records << " matrices=" << matrices << '\n';
    if (list)
        for (const auto* rec : db.sorted())
            if (pred(rec->poly())) std::cout << to_string(rec->poly()) << " ; " << rec->matrix_count << '\n';
    return Ok;
}

int cmd_verify(const FamilyFlags& f, std::size_t samples, std::uint64_t seed, bool exhaustive, const RunFlags& r) {
    if (f.general) throw UsageError("verify works on Hessenberg families");
    int rc = Ok;
    for (int n : dims(f.n)) {
        auto spec = std::make_shared<const FamilySpec>(spec_for(f, n));
        std::mt19937_64 rng(seed);
        const auto slots = spec->free_slots();
        std::vector<std::size_t> choice(slots.size());
        std::size_t mismatches = 0;
        for (std::size_t k = 0; k < samples; ++k) {
            for (auto& c : choice) c = static_cast<std::size_t>(rng() % spec->population.size());
            auto m = HessMatrix::from_choices(spec, choice);
            auto a = charpoly_thm1(m), b = charpoly_thm2(m), c = charpoly_oracle(m);
            if (!(a == b && b == c)) {
                if (mismatches++ < 5)
                    std::cout << "mismatch: thm1=" << to_string(a) << " thm2=" << to_string(b)
                              << " oracle=" << to_string(c) << '\n';
            }
        }
        std::cout << "n=" << n << " samples=" << samples << " mismatches=" << mismatches << '\n';
        if (mismatches) rc = Mismatch;
        if (exhaustive) {
            Cpdb fast = build_cpdb(*spec, enum_options(r)), slow(to_string(*spec));
            const auto size = family_size(*spec);
            if (size > r.budget) throw BudgetExceeded("verify --exhaustive: family larger than budget");
            enumerate_family(*spec, [&](const HessMatrix& m, const CharPoly&) { slow.insert(charpoly_oracle(m)); },
                             enum_options(RunFlags{1, r.budget, ""}));
            const bool same = fast == slow;
            std::cout << "n=" << n << " exhaustive cpolys=" << fast.size() << (same ? " agree" : " DISAGREE") << '\n';
            if (!same) rc = Mismatch;
        }
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bohemian upper Hessenberg matrix experiments"};
    app.require_subcommand(1);
    FamilyFlags fam;
    RunFlags run;
    std::function<int()> action;

    auto* en = app.add_subcommand("enumerate", "Build the characteristic polynomial database of a family");
    std::string en_out;
    add_family(en, fam, false);
    add_run(en, run);
    en->add_option("--out", en_out, "CPDB output path");
    en->callback([&] { action = [&] { return cmd_enumerate(fam, run, en_out); }; });

    auto* cl = app.add_subcommand("classify", "Stable, neutral, nilpotent and singular tallies");
    std::string cl_csv;
    bool cl_real = false, cl_normal = false;
    add_family(cl, fam, true);
    add_run(cl, run);
    cl->add_option("--csv", cl_csv, "Also write the table as CSV");
    cl->add_flag("--real-eigs", cl_real, "Add the distinct real eigenvalue column");
    cl->add_flag("--normal", cl_normal, "Count normal matrices by pruned search");
    cl->callback([&] { action = [&] { return cmd_classify(fam, run, cl_csv, cl_real, cl_normal); }; });

    auto* sp = app.add_subcommand("spectra", "Multiplicity table and distinct real eigenvalues");
    std::string sp_csv, sp_eigs;
    double sp_tol = 1e-8;
    bool sp_grid = false;
    add_family(sp, fam, true);
    add_run(sp, run);
    sp->add_option("--csv", sp_csv, "Summary CSV output");
    sp->add_option("--eig-csv", sp_eigs, "Per-eigenvalue CSV output");
    sp->add_option("--tol", sp_tol, "Identification tolerance")->capture_default_str();
    sp->add_flag("--grid-only", sp_grid, "Identify by tolerance alone, without the exact gcd check");
    sp->callback([&] { action = [&] { return cmd_spectra(fam, run, sp_csv, sp_eigs, sp_tol, sp_grid); }; });

    auto* he = app.add_subcommand("heights", "Characteristic heights of the maximal-height witnesses");
    int he_max = 500, he_check = 0;
    std::string he_mode = "log-float", he_out;
    double he_tol = 1e-3;
    he->add_option("--max-n", he_max, "Largest n")->check(CLI::Range(2, 50000))->capture_default_str();
    he->add_option("--mode", he_mode, "exact or log-float")
        ->check(CLI::IsMember({"exact", "log-float"}))
        ->capture_default_str();
    he->add_option("--out", he_out, "CSV of log ratios");
    he->add_option("--tol", he_tol, "Tolerance for the reported convergence onset")->capture_default_str();
    he->add_option("--check-max", he_check, "Exhaustively confirm the maximal height for n = 1..k (k <= 5)")
        ->check(CLI::Range(0, 5));
    he->callback([&] { action = [&] { return cmd_heights(he_max, he_mode, he_out, he_tol, he_check); }; });

    auto* re = app.add_subcommand("render", "Eigenvalue density image");
    RenderFlags rf;
    add_family(re, fam, true);
    add_run(re, run);
    re->add_option("--width", rf.width)->check(CLI::PositiveNumber)->capture_default_str();
    re->add_option("--height", rf.height)->check(CLI::PositiveNumber)->capture_default_str();
    re->add_option("--window", rf.window, "re_min,re_max,im_min,im_max")->delimiter(',')->expected(4);
    re->add_option("--gamma", rf.gamma)->capture_default_str();
    re->add_option("--palette", rf.palette)->check(CLI::IsMember({"gray", "fire"}))->capture_default_str();
    re->add_option("--weighting", rf.weighting)->check(CLI::IsMember({"count", "unit"}))->capture_default_str();
    re->add_option("--out", rf.out, "PGM/PPM output path")->required();
    re->add_option("--bins-csv", rf.bins_csv, "CSV of nonzero bins");
    re->callback([&] { action = [&] { return cmd_render(fam, run, rf); }; });

    auto* db = app.add_subcommand("db", "Database utilities");
    db->require_subcommand(1);
    auto* mg = db->add_subcommand("merge", "Merge CPDB files of one family");
    std::vector<std::string> mg_in;
    std::string mg_out;
    mg->add_option("inputs", mg_in, "Input CPDB files")->required();
    mg->add_option("--out", mg_out, "Merged output")->required();
    mg->callback([&] { action = [&] { return cmd_db_merge(mg_in, mg_out); }; });
    auto* qu = db->add_subcommand("query", "Count records of a kind");
    std::string qu_db, qu_filter = "all";
    bool qu_list = false;
    qu->add_option("--db", qu_db, "CPDB file")->required();
    qu->add_option("--filter", qu_filter)
        ->check(CLI::IsMember({"all", "stable", "neutral", "nilpotent", "singular"}))
        ->capture_default_str();
    qu->add_flag("--list", qu_list, "Print the matching polynomials");
    qu->callback([&] { action = [&] { return cmd_db_query(qu_db, qu_filter, qu_list); }; });

    auto* ve = app.add_subcommand("verify", "Cross-check the polynomial formulas against a determinant oracle");
    std::size_t ve_samples = 1000;
    std::uint64_t ve_seed = 1;
    bool ve_all = false;
    add_family(ve, fam, false);
    add_run(ve, run);
    ve->add_option("--samples", ve_samples)->capture_default_str();
    ve->add_option("--seed", ve_seed)->capture_default_str();
    ve->add_flag("--exhaustive", ve_all, "Also rebuild the whole database with the oracle and compare");
    ve->callback([&] { action = [&] { return cmd_verify(fam, ve_samples, ve_seed, ve_all, run); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Guard;
    } catch (const GuardExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Guard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Mismatch;
    }
}
