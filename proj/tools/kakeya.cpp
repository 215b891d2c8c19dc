#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kakeya/bounds.hpp"
#include "kakeya/constructions.hpp"
#include "kakeya/errors.hpp"
#include "kakeya/io.hpp"
#include "kakeya/polymethod.hpp"
#include "kakeya/verify.hpp"

using namespace kakeya;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitGaveUp = 2;
constexpr int kExitIo = 3;
constexpr int kExitParams = 4;

struct Timer {
    bool enabled = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    void attach(json& j) const {
        if (!enabled) return;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        j["elapsed_ms"] = ms;
    }
};

void emit(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream os(path);
        os << j.dump(2) << "\n";
    }
}

int run_construct(const std::string& id, uint64_t q, int n, int r, int r1, int k,
                  uint64_t seed, int max_attempts, int extra, const std::string& in,
                  const std::string& out, const std::string& summary, const Timer& timer) {
    Field f = Field::of_order(q);
    std::optional<ConstructionResult> res;
    LoadedPointSet loaded;  // keeps a loaded base set alive

    if (id == "missing-digit") {
        res = missing_digit(f, n);
    } else if (id == "quadratic") {
        res = quadratic_rank1(f, n);
    } else if (id == "final-upper") {
        res = final_upper(f, n, r);
    } else if (id == "universal") {
        res = universal_set(f, n, k);
    } else if (id == "kakeya-universal") {
        res = kakeya_from_universal(f, n, r);
    } else if (id == "random-rotation") {
        res = random_rotation_rank1(f, n, seed, max_attempts);
    } else if (id == "lift") {
        if (in.empty()) throw BadParameter("lift needs --in with the base set");
        loaded = load_pointset(in);
        if (loaded.field->q() != q) throw BadParameter("base set field mismatch");
        res = lift(*loaded.set, n, r, r1);
    } else if (id == "product") {
        if (in.empty()) throw BadParameter("product needs --in with the base set");
        loaded = load_pointset(in);
        ConstructionResult base{*loaded.set,
                                r,
                                "file",
                                Int(loaded.set->card()),
                                true,
                                Rat(Int(loaded.set->card())),
                                false,
                                false,
                                0,
                                Rat(0)};
        res = product_with_full(base, extra);
    } else {
        throw BadParameter("unknown construction id: " + id);
    }

    if (!out.empty()) save_pointset(out, res->set);

    json j;
    j["schema"] = "construct v1";
    j["id"] = id;
    j["q"] = q;
    j["n"] = res->set.dim();
    j["rank"] = res->rank;
    j["seed"] = seed;
    j["size"] = res->set.card();
    j["predicted_size"] = res->predicted_size.str();
    j["size_is_exact"] = res->size_is_exact;
    j["claimed_bound"] = rat_string(res->claimed_bound);
    j["bound_strict"] = res->bound_strict;
    j["bound_approx"] = res->bound_approx;
    j["provenance"] = res->provenance;
    if (res->attempts) j["attempts"] = res->attempts;
    if (res->refined_bound != 0) j["refined_bound"] = rat_string(res->refined_bound);
    if (!out.empty()) j["out"] = out;
    timer.attach(j);
    emit(j, summary);
    return kExitOk;
}

int run_verify(const std::string& file, int r, int universal_k, uint64_t samples,
               uint64_t seed, int threads, const std::string& summary,
               const Timer& timer) {
    LoadedPointSet loaded = load_pointset(file);
    json j;
    j["schema"] = "verify v1";
    j["file"] = file;
    j["q"] = loaded.field->q();
    j["n"] = loaded.set->dim();
    j["size"] = loaded.set->card();
    bool ok;
    if (universal_k > 0) {
        UniversalReport rep = samples ? is_universal_sampled(*loaded.set, universal_k,
                                                             samples, seed)
                                      : is_universal(*loaded.set, universal_k);
        j["check"] = "universal";
        j["k"] = universal_k;
        j["mode"] = rep.mode == VerifyMode::Exhaustive ? "exhaustive" : "sampled";
        j["subsets_checked"] = rep.subsets_checked;
        if (rep.mode == VerifyMode::Sampled) {
            j["seed"] = seed;
            j["result"] = rep.failure_found ? "failure" : "no-failure-in-sample";
        } else {
            j["result"] = rep.verified ? "verified" : "failure";
        }
        if (rep.first_failure) j["first_failure_subset"] = *rep.first_failure;
        ok = !rep.failure_found;
    } else {
        VerificationReport rep = samples
                                     ? is_kakeya_sampled(*loaded.set, r, samples, seed)
                                     : is_kakeya(*loaded.set, r, threads);
        j["check"] = "kakeya";
        j["rank"] = r;
        j["mode"] = rep.mode == VerifyMode::Exhaustive ? "exhaustive" : "sampled";
        j["subspaces_checked"] = rep.subspaces_checked;
        if (rep.mode == VerifyMode::Sampled) {
            j["seed"] = seed;
            j["result"] = rep.failure_found ? "failure" : "no-failure-in-sample";
        } else {
            j["result"] = rep.verified ? "verified" : "failure";
            j["witness_count"] = rep.witnesses.size();
        }
        if (rep.first_failure) {
            json basis = json::array();
            for (const auto& row : rep.first_failure->basis) basis.push_back(row);
            j["first_failure_basis"] = basis;
        }
        ok = !rep.failure_found;
    }
    timer.attach(j);
    emit(j, summary);
    return ok ? kExitOk : kExitVerifyFail;
}

int run_bounds(const std::vector<uint64_t>& qs, int n, int r, int n_max, int r_max,
               const std::string& format, const std::string& out, bool constructions) {
    std::vector<BoundReport> reports;
    if (n > 0 && r > 0) {
        for (uint64_t q : qs) reports.push_back(bound_report(q, n, r, constructions));
    } else {
        reports = atlas(qs, n_max, r_max, constructions);
    }
    std::string text = format == "csv" ? atlas_csv(reports) : atlas_json(reports);
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream os(out);
        os << text;
    }
    return kExitOk;
}

int run_search(uint64_t q, int n, int r, uint64_t budget, const std::string& summary,
               const Timer& timer) {
    Field f = Field::of_order(q);
    json j;
    j["schema"] = "search v1";
    j["q"] = q;
    j["n"] = n;
    j["r"] = r;
    try {
        MinKakeyaResult res = min_kakeya(f, n, r, budget);
        j["minimum"] = res.minimum.str();
        j["lower_ceiling"] = res.lower_ceiling.str();
        j["nodes"] = res.nodes;
        j["mode"] = res.exhaustive ? "exhaustive" : "branch-and-bound";
        j["optimal"] = res.optimal.members();
        // Certificate: the reported optimum really is a Kakeya set.
        j["certificate_verified"] = is_kakeya(res.optimal, r).verified;
        timer.attach(j);
        emit(j, summary);
        return kExitOk;
    } catch (const BudgetExhausted& e) {
        j["error"] = "budget-exhausted";
        j["interval"] = {e.lower_ceiling.str(), e.best_found.str()};
        timer.attach(j);
        emit(j, summary);
        return kExitGaveUp;
    }
}

MultiPoly random_poly(const Field& f, int n, uint32_t max_deg, int terms,
                      SplitMix64& rng) {
    MultiPoly p(f, n);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(n);
        uint32_t left = max_deg;
        for (int k = 0; k < n; ++k) {
            e[k] = static_cast<uint32_t>(rng.below(left + 1));
            left -= e[k];
        }
        p.add_term(e, rng.below(f.q()));
    }
    return p;
}

int run_polycheck(uint64_t q, int trials, uint64_t seed, const std::string& summary,
                  const Timer& timer) {
    Field f = Field::of_order(q);
    SplitMix64 rng(seed);
    int mult_pass = 0, taylor_pass = 0, deriv_pass = 0, sz_pass = 0, vanish_pass = 0;
    bool all_ok = true;

    for (int t = 0; t < trials; ++t) {
        MultiPoly p = random_poly(f, 2, 4, 5, rng);

        // Shift-based and derivative-based multiplicity must agree.
        Vec a;
        a.c = {rng.below(q), rng.below(q)};
        bool ok = multiplicity(p, a) == multiplicity_by_derivatives(p, a);
        mult_pass += ok;

        // Taylor: P(x + y) = sum_i P^(i)(y) x^i at random x, y.
        std::vector<Elem> x{rng.below(q), rng.below(q)};
        std::vector<Elem> y{rng.below(q), rng.below(q)};
        Elem sum = 0;
        for (uint32_t i0 = 0; i0 <= 4; ++i0)
            for (uint32_t i1 = 0; i1 + i0 <= 4; ++i1) {
                Elem v = hasse_derivative(p, {i0, i1}).eval(y);
                v = f.mul(v, f.mul(f.pow(x[0], i0), f.pow(x[1], i1)));
                sum = f.add(sum, v);
            }
        bool tok = sum == p.eval({f.add(x[0], y[0]), f.add(x[1], y[1])});
        taylor_pass += tok;

        // Derivative linearity.
        MultiPoly p2 = random_poly(f, 2, 4, 5, rng);
        ExpVec i{uint32_t(rng.below(3)), uint32_t(rng.below(3))};
        bool dok = hasse_derivative(p.plus(p2), i) ==
                   hasse_derivative(p, i).plus(hasse_derivative(p2, i));
        deriv_pass += dok;

        // Multiplicity Schwartz-Zippel over the full field.
        bool sok = true;
        if (!p.is_zero()) {
            std::vector<Elem> grid;
            for (Elem e = 0; e < q; ++e) grid.push_back(e);
            sok = sz_audit(p, grid).pass;
        }
        sz_pass += sok;

        // Interpolation contract re-check.
        std::vector<Vec> pts;
        Vec v1, v2;
        v1.c = {rng.below(q), rng.below(q)};
        v2.c = {rng.below(q), rng.below(q)};
        pts.push_back(v1);
        if (!(v2 == v1)) pts.push_back(v2);
        uint32_t m = 2, kdeg = 0;
        Int need = binomial(Int(m) + 1, Int(2)) * Int(pts.size());
        while (!(binomial(Int(2) + kdeg, Int(2)) > need)) ++kdeg;
        MultiPoly van = vanishing_poly(f, 2, pts, m, kdeg);
        bool vok = !van.is_zero() && van.degree() <= int(kdeg);
        for (const Vec& s : pts) vok = vok && multiplicity(van, s) >= m;
        vanish_pass += vok;

        all_ok = all_ok && ok && tok && dok && sok && vok;
    }

    json j;
    j["schema"] = "polycheck v1";
    j["q"] = q;
    j["trials"] = trials;
    j["seed"] = seed;
    j["multiplicity_pass"] = mult_pass;
    j["taylor_pass"] = taylor_pass;
    j["derivative_pass"] = deriv_pass;
    j["schwartz_zippel_pass"] = sz_pass;
    j["vanishing_pass"] = vanish_pass;
    j["all_pass"] = all_ok;
    timer.attach(j);
    emit(j, summary);
    return all_ok ? kExitOk : kExitVerifyFail;
}

int run_ifset(uint64_t q, const std::string& fn, const std::string& summary,
              const Timer& timer) {
    Field f = Field::of_order(q);
    FunctionTable tab = builtin_function(f, fn);
    json j;
    j["schema"] = "ifset v1";
    j["q"] = q;
    j["f"] = fn;
    j["rows"] = json::array();
    uint64_t max_size = 0;
    for (Elem t = 0; t < q; ++t) {
        ClassProfile p = class_profile(f, tab, t);
        json row;
        row["t"] = t;
        row["size"] = p.num_classes;
        row["class_sizes"] = p.class_sizes;
        j["rows"].push_back(row);
        max_size = std::max(max_size, p.num_classes);
    }
    j["max_size"] = max_size;
    timer.attach(j);
    emit(j, summary);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kakeya set construction, verification, and bounds toolkit"};
    app.require_subcommand(1);

    uint64_t q = 3, seed = kDefaultSeed, samples = 0, budget = 50000000;
    int n = 2, r = 1, r1 = 1, k = 1, universal_k = 0, threads = 1, max_attempts = 32;
    int extra = 0, trials = 200, n_max = 3, r_max = 2;
    std::string id, in, out, summary, file, format = "json", fn = "x^2";
    bool timing = false, no_constructions = false;

    app.add_flag("--timing", timing, "include elapsed_ms in reports");

    CLI::App* construct = app.add_subcommand("construct", "build a named set");
    construct->add_option("--id", id, "construction id")->required();
    construct->add_option("--q", q);
    construct->add_option("--n", n);
    construct->add_option("--r", r);
    construct->add_option("--r1", r1);
    construct->add_option("--k", k);
    construct->add_option("--seed", seed);
    construct->add_option("--max-attempts", max_attempts);
    construct->add_option("--extra", extra, "extra full-space dimensions (product)");
    construct->add_option("--in", in, "base pointset file (lift, product)");
    construct->add_option("--out", out, "pointset output file");
    construct->add_option("--summary", summary, "summary JSON file (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "check a pointset file");
    verify->add_option("file", file)->required();
    verify->add_option("--r", r);
    verify->add_option("--universal", universal_k, "check k-universality instead");
    verify->add_option("--samples", samples, "sampled mode with this many draws");
    verify->add_option("--seed", seed);
    verify->add_option("--threads", threads);
    verify->add_option("--summary", summary);

    CLI::App* bounds = app.add_subcommand("bounds", "bound tables");
    std::vector<uint64_t> qs{3};
    bounds->add_option("--q", qs, "field orders");
    int bn = 0, br = 0;
    bounds->add_option("--n", bn);
    bounds->add_option("--r", br);
    bounds->add_option("--n-max", n_max);
    bounds->add_option("--r-max", r_max);
    bounds->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    bounds->add_option("--out", out);
    bounds->add_flag("--no-constructions", no_constructions);

    CLI::App* search = app.add_subcommand("search", "exact minimum Kakeya size");
    search->add_option("--q", q);
    search->add_option("--n", n);
    search->add_option("--r", r);
    search->add_option("--budget", budget);
    search->add_option("--summary", summary);

    CLI::App* polycheck = app.add_subcommand("polycheck", "polynomial-method battery");
    polycheck->add_option("--q", q);
    polycheck->add_option("--trials", trials);
    polycheck->add_option("--seed", seed);
    polycheck->add_option("--summary", summary);

    CLI::App* ifset = app.add_subcommand("ifset", "value-set table and class profiles");
    ifset->add_option("--q", q);
    ifset->add_option("--f", fn, "function id");
    ifset->add_option("--summary", summary);

    CLI11_PARSE(app, argc, argv);

    Timer timer;
    timer.enabled = timing;

    try {
        if (construct->parsed())
            return run_construct(id, q, n, r, r1, k, seed, max_attempts, extra, in, out,
                                 summary, timer);
        if (verify->parsed())
            return run_verify(file, r, universal_k, samples, seed, threads, summary,
                              timer);
        if (bounds->parsed())
            return run_bounds(qs, bn, br, n_max, r_max, format, out, !no_constructions);
        if (search->parsed()) return run_search(q, n, r, budget, summary, timer);
        if (polycheck->parsed()) return run_polycheck(q, trials, seed, summary, timer);
        if (ifset->parsed()) return run_ifset(q, fn, summary, timer);
    } catch (const AttemptsExhausted& e) {
        json j{{"error", "attempts-exhausted"}, {"best_coverage", e.best_coverage}};
        std::cerr << j.dump() << "\n";
        return kExitGaveUp;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParams;
    }
    return kExitParams;
}
