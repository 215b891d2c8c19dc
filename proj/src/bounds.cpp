#include "kakeya/bounds.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "kakeya/constructions.hpp"
#include "kakeya/errors.hpp"

namespace kakeya {

namespace {

struct QShape {
    uint64_t p;
    unsigned m;
};

QShape q_shape(uint64_t q) {
    if (q < 2) throw NotAPrimePower("q must be a prime power");
    uint64_t p = q;
    for (uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    unsigned m = 0;
    uint64_t t = q;
    while (t % p == 0) {
        t /= p;
        ++m;
    }
    if (t != 1) throw NotAPrimePower("q must be a prime power");
    return {p, m};
}

BoundRow exact_row(std::string id, bool upper, bool applicable, Rat value, bool strict,
                   const Rat& full) {
    bool vacuous = applicable && (upper ? value >= full : value <= 0);
    return BoundRow{std::move(id), upper, applicable, std::move(value), 0.0,
                    false,         strict, vacuous};
}

BoundRow approx_row(std::string id, bool applicable, double value, bool strict,
                    double full) {
    return BoundRow{std::move(id), true,   applicable, Rat(0), value,
                    true,          strict, applicable && value >= full};
}

}  // namespace

Rat lower_bound(uint64_t q, int n, int r) {
    return rat_pow(Rat(ipow(Int(q), r + 1), ipow(Int(q), r) + q - 1), n);
}

Rat linear_lower(uint64_t q, int n, int r) {
    return (1 - Rat(Int(n) * (q - 1), ipow(Int(q), r))) * Rat(ipow(Int(q), n));
}

BoundReport bound_report(uint64_t q, int n, int r, bool with_constructions) {
    if (n < 1 || r < 1 || r > n) throw BadParameter("need 1 <= r <= n");
    QShape shape = q_shape(q);
    bool odd = q % 2 == 1;
    bool char2 = shape.p == 2;
    Rat full = Rat(ipow(Int(q), n));
    double fulld = std::pow(double(q), double(n));

    BoundReport rep;
    rep.q = q;
    rep.n = n;
    rep.r = r;

    rep.rows.push_back(exact_row("lower-main", false, true, lower_bound(q, n, r), false, full));
    rep.rows.push_back(
        exact_row("lower-linear", false, true, linear_lower(q, n, r), false, full));

    Rat qn1 = Rat(ipow(Int(q), n - 1));
    rep.rows.push_back(exact_row("rank1-upper-odd", true, r == 1 && odd,
                                 Rat(q) * rat_pow(Rat(q + 1, 2), n - 1) + qn1, false, full));
    rep.rows.push_back(exact_row("rank1-upper-even", true, r == 1 && !odd,
                                 Rat(q - 1) * rat_pow(Rat(q, 2), n - 1) + qn1, false, full));

    Rat qr = Rat(ipow(Int(q), r));
    Rat block = q == 3 ? Rat(ipow(Int(3), r + 1) - 2)
                       : (1 - Rat(odd ? q - 3 : q - 1) / (2 * qr)) * qr * q;
    rep.rows.push_back(exact_row("block-upper", true, n == r + 1, block, false, full));

    int blocks = n / (r + 1);
    rep.rows.push_back(exact_row(
        "product-upper", true, true,
        rat_pow(1 - (Rat(q) - delta_q(q)) / (2 * qr), blocks) * full, false, full));

    rep.rows.push_back(exact_row("quadratic-odd", true, r == 1 && odd && q >= 3,
                                 Rat(2) * (1 + Rat(1, q - 1)) * rat_pow(Rat(q + 1, 2), n),
                                 true, full));
    rep.rows.push_back(
        exact_row("quadratic-even-power", true, r == 1 && char2 && shape.m % 2 == 0,
                  Rat(3, 2) * (1 + Rat(1, q - 1)) * rat_pow(Rat(2 * q + 1, 3), n), true,
                  full));
    rep.rows.push_back(approx_row(
        "quadratic-odd-power", r == 1 && char2 && shape.m % 2 == 1 && q >= 8,
        1.5 * std::pow(2.0 * (q + std::sqrt(double(q)) + 1) / 3.0, n), true, fulld));

    Int k = ipow(Int(q), r);
    bool k_small = k <= 4096;
    int m = k > Int(n) ? 0 : int(Int(n) / k);
    if (k_small) {
        Rat miss = rat_pow(1 - Rat(1, ipow(Int(q), m)), unsigned(uint64_t(k)));
        rep.rows.push_back(exact_row("universal-upper", true, true, (1 - miss) * full,
                                     false, full));
    } else {
        double miss = std::exp(double(k) * std::log1p(-std::pow(double(q), -m)));
        rep.rows.push_back(approx_row("universal-upper", true, (1.0 - miss) * fulld,
                                      false, fulld));
    }

    rep.rows.push_back(approx_row(
        "universal-exponent", true,
        std::pow(double(q), n * (1.0 - std::pow(double(q), -r)) + r + 1), false, fulld));

    rep.rows.push_back(exact_row("refined-universal", true, true,
                                 Rat(ipow(Int(q), n - m + r)), false, full));

    if (with_constructions && ipow(Int(q), n) <= 6561) {
        Field f = Field::of_order(q);
        auto add = [&](const char* id, const ConstructionResult& c) {
            rep.construction_sizes.emplace_back(id, Int(c.set.card()));
        };
        if (r == 1) {
            add("missing-digit", missing_digit(f, n));
            if (q >= 3) add("quadratic", quadratic_rank1(f, n));
        }
        add("final-upper", final_upper(f, n, r));
        if (k <= Int(1) << 20) add("kakeya-universal", kakeya_from_universal(f, n, r));
    }

    rep.best_lower_ceiling = 1;
    for (const BoundRow& row : rep.rows)
        if (!row.is_upper && row.applicable && !row.vacuous && !row.approx)
            rep.best_lower_ceiling = std::max(rep.best_lower_ceiling, ceil_rat(row.value));

    rep.best_upper = ipow(Int(q), n);
    rep.best_upper_id = "full-space";
    auto consider = [&](const std::string& id, const Int& cap) {
        if (cap < rep.best_upper) {
            rep.best_upper = cap;
            rep.best_upper_id = id;
        }
    };
    for (const BoundRow& row : rep.rows) {
        if (!row.is_upper || !row.applicable || row.vacuous || row.approx) continue;
        consider(row.id, row.strict ? ceil_rat(row.value) - 1 : floor_rat(row.value));
    }
    for (const auto& [id, size] : rep.construction_sizes) consider(id, size);

    Rat universal_val = 0, product_val = 0;
    bool universal_exact = false;
    for (const BoundRow& row : rep.rows) {
        if (row.id == "universal-upper" && !row.approx) {
            universal_val = row.value;
            universal_exact = true;
        }
        if (row.id == "product-upper") product_val = row.value;
    }
    rep.universal_beats_product = universal_exact && universal_val < product_val;
    return rep;
}

std::vector<BoundReport> atlas(const std::vector<uint64_t>& qs, int n_max, int r_max,
                               bool with_constructions) {
    std::vector<BoundReport> out;
    for (uint64_t q : qs)
        for (int n = 1; n <= n_max; ++n)
            for (int r = 1; r <= std::min(r_max, n); ++r)
                out.push_back(bound_report(q, n, r, with_constructions));
    return out;
}

std::string rat_string(const Rat& x) {
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace {

std::string approx_string(double v) {
    std::ostringstream os;
    os.precision(9);
    os << std::fixed << v;
    return os.str();
}

}  // namespace

std::string atlas_csv(const std::vector<BoundReport>& reports) {
    std::ostringstream os;
    os << "bounds-atlas v1\n";
    os << "q,n,r,bound_id,kind,applicable,approx,strict,vacuous,value\n";
    for (const BoundReport& rep : reports) {
        std::string prefix = std::to_string(rep.q) + "," + std::to_string(rep.n) + "," +
                             std::to_string(rep.r) + ",";
        for (const BoundRow& row : rep.rows) {
            os << prefix << row.id << "," << (row.is_upper ? "upper" : "lower") << ","
               << (row.applicable ? 1 : 0) << "," << (row.approx ? 1 : 0) << ","
               << (row.strict ? 1 : 0) << "," << (row.vacuous ? 1 : 0) << ","
               << (row.approx ? approx_string(row.approx_value) : rat_string(row.value))
               << "\n";
        }
        for (const auto& [id, size] : rep.construction_sizes)
            os << prefix << id << ",construction,1,0,0,0," << size.str() << "\n";
        os << prefix << "best-lower-ceiling,best,1,0,0,0," << rep.best_lower_ceiling.str()
           << "\n";
        os << prefix << "best-upper,best,1,0,0,0," << rep.best_upper.str() << "\n";
    }
    return os.str();
}

std::string atlas_json(const std::vector<BoundReport>& reports) {
    nlohmann::ordered_json root;
    root["schema"] = "bounds-atlas v1";
    root["reports"] = nlohmann::ordered_json::array();
    for (const BoundReport& rep : reports) {
        nlohmann::ordered_json j;
        j["q"] = rep.q;
        j["n"] = rep.n;
        j["r"] = rep.r;
        j["rows"] = nlohmann::ordered_json::array();
        for (const BoundRow& row : rep.rows) {
            nlohmann::ordered_json rj;
            rj["id"] = row.id;
            rj["kind"] = row.is_upper ? "upper" : "lower";
            rj["applicable"] = row.applicable;
            rj["approx"] = row.approx;
            rj["strict"] = row.strict;
            rj["vacuous"] = row.vacuous;
            rj["value"] = row.approx ? approx_string(row.approx_value)
                                     : rat_string(row.value);
            j["rows"].push_back(rj);
        }
        j["constructions"] = nlohmann::ordered_json::object();
        for (const auto& [id, size] : rep.construction_sizes)
            j["constructions"][id] = size.str();
        j["best_lower_ceiling"] = rep.best_lower_ceiling.str();
        j["best_upper"] = rep.best_upper.str();
        j["best_upper_id"] = rep.best_upper_id;
        j["universal_beats_product"] = rep.universal_beats_product;
        root["reports"].push_back(j);
    }
    return root.dump(2);
}

}  // namespace kakeya
