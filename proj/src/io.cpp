#include "kakeya/io.hpp"

#include <fstream>
#include <sstream>

#include "kakeya/errors.hpp"

namespace kakeya {

void write_pointset(std::ostream& os, const PointSet& s) {
    os << "kakeya-pointset v1\n";
    os << s.field().header() << "\n";
    os << "n=" << s.dim() << " card=" << s.card() << "\n";
    const Field& f = s.field();
    s.for_each([&](uint64_t idx) {
        Vec v = vec_from_index(f, s.dim(), idx);
        for (int j = 0; j < s.dim(); ++j) {
            if (j) os << ',';
            os << v.c[j];
        }
        os << '\n';
    });
}

std::string pointset_to_string(const PointSet& s) {
    std::ostringstream os;
    write_pointset(os, s);
    return os.str();
}

void save_pointset(const std::string& path, const PointSet& s) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ParseError("cannot open " + path + " for writing");
    write_pointset(os, s);
}

namespace {

uint64_t parse_kv(const std::string& line, const std::string& key, size_t& pos) {
    size_t at = line.find(key + "=", pos);
    if (at == std::string::npos) throw ParseError("missing " + key + "= in: " + line);
    pos = at + key.size() + 1;
    size_t end = pos;
    while (end < line.size() && isdigit(line[end])) ++end;
    if (end == pos) throw ParseError("bad value for " + key + " in: " + line);
    uint64_t v = std::stoull(line.substr(pos, end - pos));
    pos = end;
    return v;
}

}  // namespace

LoadedPointSet read_pointset(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "kakeya-pointset v1")
        throw ParseError("bad magic line, expected 'kakeya-pointset v1'");

    if (!std::getline(is, line)) throw ParseError("missing field header");
    size_t pos = 0;
    uint64_t q = parse_kv(line, "q", pos);
    uint64_t p = parse_kv(line, "p", pos);
    uint64_t m = parse_kv(line, "m", pos);
    auto field = std::make_unique<Field>(Field::of_order(q));
    if (field->p() != p || field->m() != m)
        throw ParseError("field header inconsistent with order " + std::to_string(q));
    // Verify the modulus matches our deterministic choice.
    size_t mod_at = line.find("mod=");
    if (mod_at == std::string::npos) throw ParseError("missing mod= in field header");
    std::string mods = line.substr(mod_at + 4);
    std::ostringstream expect;
    for (size_t i = 0; i < field->modulus().size(); ++i) {
        if (i) expect << ',';
        expect << field->modulus()[i];
    }
    if (mods != expect.str())
        throw ParseError("modulus mismatch: got '" + mods + "' expected '" + expect.str() + "'");

    if (!std::getline(is, line)) throw ParseError("missing dimension line");
    pos = 0;
    uint64_t n = parse_kv(line, "n", pos);
    uint64_t card = parse_kv(line, "card", pos);

    auto set = std::make_unique<PointSet>(*field, static_cast<int>(n));
    uint64_t seen = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Vec v;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            try {
                v.c.push_back(std::stoull(tok));
            } catch (const std::exception&) {
                throw ParseError("bad coordinate '" + tok + "'");
            }
        }
        if (v.c.size() != n) throw ParseError("member with wrong coordinate count: " + line);
        for (Elem e : v.c)
            if (e >= q) throw ParseError("coordinate out of range: " + line);
        set->insert(v);
        ++seen;
    }
    if (seen != card || set->card() != card)
        throw ParseError("cardinality mismatch: header says " + std::to_string(card) +
                         ", file has " + std::to_string(set->card()));
    LoadedPointSet out;
    out.field = std::move(field);
    out.set = std::move(set);
    return out;
}

LoadedPointSet load_pointset(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot open " + path);
    return read_pointset(is);
}

}  // namespace kakeya
