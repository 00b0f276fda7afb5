#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qtc/seed.hpp"

namespace qtc {

struct RegistryEntry {
    std::string name;
    size_t n = 0, k = 0, m = 0;
    std::vector<AncillaKind> kinds;
    std::vector<uint64_t> decimals;
    std::optional<SeedConvention> forced;
    std::optional<SeedTransform> seed;  // decoded and validated
};

struct Registry {
    std::map<std::string, RegistryEntry> codes;
    std::vector<std::string> warnings;

    const SeedTransform& get(const std::string& name) const {
        auto it = codes.find(name);
        if (it == codes.end())
            throw std::invalid_argument("registry: unknown code '" + name + "'");
        return *it->second.seed;
    }
};

inline const std::vector<uint64_t>& opt_inner_decimals() {
    static const std::vector<uint64_t> v = {4091, 3736, 2097, 1336, 1601, 279,
                                            3093, 502,  1792, 3020, 226,  1100};
    return v;
}

inline const std::vector<uint64_t>& opt_outer_decimals() {
    static const std::vector<uint64_t> v = {1048, 3872, 3485, 2054, 983,  3164,
                                            3145, 1824, 987,  3282, 2505, 1984};
    return v;
}

inline std::vector<AncillaKind> parse_ancilla_kinds(const std::string& field) {
    std::vector<AncillaKind> kinds;
    std::stringstream ss(field);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "a")
            kinds.push_back(AncillaKind::Ancilla);
        else if (tok == "e")
            kinds.push_back(AncillaKind::Ebit);
        else
            throw std::invalid_argument("ancilla kinds must be 'a' or 'e', got '" + tok + "'");
    }
    return kinds;
}

inline std::string format_ancilla_kinds(const std::vector<AncillaKind>& kinds) {
    std::string s;
    for (size_t i = 0; i < kinds.size(); ++i) {
        if (i) s.push_back(',');
        s.push_back(kinds[i] == AncillaKind::Ebit ? 'e' : 'a');
    }
    return s;
}

/// Registry grammar, one record per non-comment line:
///   <name> <n> <k> <m> <ancilla_kinds a|e comma separated> [conv=msb|lsb|published] <2(n+m) decimals>
/// '#' starts a comment; later records override earlier names (a warning is recorded).
inline void parse_registry_line(Registry& reg, const std::string& line, size_t lineno,
                                const std::string& where) {
    std::string body = line.substr(0, line.find('#'));
    std::stringstream ss(body);
    std::string name;
    if (!(ss >> name)) return;  // blank or comment-only
    RegistryEntry e;
    e.name = name;
    std::string kinds_field;
    if (!(ss >> e.n >> e.k >> e.m >> kinds_field))
        throw std::invalid_argument(where + ":" + std::to_string(lineno) +
                                    ": expected '<name> <n> <k> <m> <ancilla_kinds>'");
    e.kinds = parse_ancilla_kinds(kinds_field);
    std::string tok;
    while (ss >> tok) {
        if (tok.rfind("conv=", 0) == 0) {
            std::string c = tok.substr(5);
            if (c == "msb")
                e.forced = SeedConvention::MsbFirst;
            else if (c == "lsb")
                e.forced = SeedConvention::LsbFirst;
            else if (c == "published")
                e.forced = SeedConvention::PublishedPair;
            else
                throw std::invalid_argument(where + ":" + std::to_string(lineno) +
                                            ": unknown convention '" + c + "'");
            continue;
        }
        try {
            e.decimals.push_back(std::stoull(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument(where + ":" + std::to_string(lineno) +
                                        ": bad decimal '" + tok + "'");
        }
    }
    try {
        e.seed = decode_seed_decimals(e.decimals, e.n, e.k, e.m, e.kinds, e.forced);
    } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(where + ":" + std::to_string(lineno) + ": " + ex.what());
    }
    if (reg.codes.count(name))
        reg.warnings.push_back("registry: '" + name + "' overridden by " + where + ":" +
                               std::to_string(lineno));
    reg.codes.insert_or_assign(name, std::move(e));
}

/// Built-in registry: the optimized code pair in its published decimal form.
inline Registry builtin_registry() {
    Registry reg;
    auto add = [&](const std::string& name, const std::vector<uint64_t>& dec,
                   std::vector<AncillaKind> kinds) {
        RegistryEntry e;
        e.name = name;
        e.n = 3;
        e.k = 1;
        e.m = 3;
        e.kinds = kinds;
        e.decimals = dec;
        e.forced = SeedConvention::PublishedPair;
        e.seed = decode_seed_decimals(dec, 3, 1, 3, kinds, e.forced);
        reg.codes.emplace(name, std::move(e));
    };
    add("opt-inner", opt_inner_decimals(), {AncillaKind::Ebit, AncillaKind::Ebit});
    add("opt-outer", opt_outer_decimals(), {AncillaKind::Ancilla, AncillaKind::Ancilla});
    return reg;
}

/// Built-ins plus the records of an optional registry file; file records win on
/// name clashes (documented precedence, recorded as warnings).
inline Registry load_registry(const std::string& path) {
    Registry reg = builtin_registry();
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("registry: cannot open '" + path + "'");
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        parse_registry_line(reg, line, lineno, path);
    }
    return reg;
}

inline std::string format_registry_entry(const RegistryEntry& e) {
    std::ostringstream os;
    os << e.name << ' ' << e.n << ' ' << e.k << ' ' << e.m << ' '
       << format_ancilla_kinds(e.kinds);
    if (e.forced) {
        os << " conv=";
        switch (*e.forced) {
            case SeedConvention::MsbFirst: os << "msb"; break;
            case SeedConvention::LsbFirst: os << "lsb"; break;
            case SeedConvention::PublishedPair: os << "published"; break;
        }
    }
    for (uint64_t d : e.decimals) os << ' ' << d;
    return os.str();
}

}  // namespace qtc
