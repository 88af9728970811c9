#include "rv/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace rv {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

real_t to_real(const std::string& s) {
    const std::string t = trim(s);
    if (t.empty()) throw ConfigError("empty number");
    char* end = nullptr;
    errno = 0;
    real_t v = std::strtold(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
        throw ConfigError("not a number: '" + t + "'");
    return v;
}

long to_long(const nlohmann::json& j, const char* what) {
    if (!j.is_number_integer()) throw ConfigError(std::string(what) + " must be an integer");
    return j.get<long>();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

void only_keys(const nlohmann::json& j, std::set<std::string> allowed, const char* where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError(std::string("unknown field '") + it.key() + "' in " + where);
}

}  // namespace

complex_t parse_complex(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) throw ConfigError("empty complex number");
    if (s.find(',') != std::string::npos) {
        auto parts = split(s, ',');
        if (parts.size() != 2) throw ConfigError("complex 're,im' expected: '" + s + "'");
        return {to_real(parts[0]), to_real(parts[1])};
    }
    if (s.back() != 'i') return {to_real(s), 0};
    // a+bi: split at the last sign that is not part of an exponent
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            cut = k;
            break;
        }
    auto imag = [](const std::string& t) -> real_t {
        if (t.empty() || t == "+") return 1;
        if (t == "-") return -1;
        return to_real(t);
    };
    if (cut == std::string::npos) return {0, imag(body)};
    return {to_real(body.substr(0, cut)), imag(body.substr(cut))};
}

complex_t parse_complex(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<real_t>(), 0};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<real_t>(), j[1].get<real_t>()};
    throw ConfigError("complex value expected");
}

PlaceParams parse_params(const nlohmann::json& doc) {
    only_keys(doc, {"place", "blocks"}, "params");
    if (!doc.contains("place") || !doc["place"].is_string()) throw ConfigError("params need \"place\"");
    if (!doc.contains("blocks") || !doc["blocks"].is_array()) throw ConfigError("params need \"blocks\"");
    const std::string place = doc["place"];
    if (place == "real") {
        RealPlaceParams p;
        for (const auto& b : doc["blocks"]) {
            only_keys(b, {"kind", "delta", "l", "t"}, "real block");
            if (!b.contains("kind") || !b["kind"].is_string()) throw ConfigError("real block needs \"kind\"");
            const std::string kind = b["kind"];
            complex_t t = b.contains("t") ? parse_complex(b["t"]) : complex_t(0);
            if (kind == "gl1") {
                if (b.contains("l")) throw ConfigError("gl1 block takes delta, not l");
                p.blocks.push_back(GL1Block{static_cast<int>(b.contains("delta") ? to_long(b["delta"], "delta") : 0), t});
            } else if (kind == "ds2") {
                if (b.contains("delta")) throw ConfigError("ds2 block takes l, not delta");
                if (!b.contains("l")) throw ConfigError("ds2 block needs l");
                p.blocks.push_back(DS2Block{to_long(b["l"], "l"), t});
            } else {
                throw ConfigError("unknown block kind '" + kind + "'");
            }
        }
        validate(p);
        return p;
    }
    if (place == "complex") {
        ComplexPlaceParams p;
        for (const auto& b : doc["blocks"]) {
            only_keys(b, {"l", "t"}, "complex block");
            p.blocks.push_back(ComplexBlock{b.contains("t") ? parse_complex(b["t"]) : complex_t(0),
                                            b.contains("l") ? to_long(b["l"], "l") : 0});
        }
        validate(p);
        return p;
    }
    throw ConfigError("place must be \"real\" or \"complex\"");
}

PlaceParams load_params(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read params file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("params JSON: ") + e.what());
    }
    return parse_params(j);
}

nlohmann::ordered_json params_to_json(const PlaceParams& pp) {
    nlohmann::ordered_json j;
    auto cx = [](complex_t z) { return fmt(z.real()) + "," + fmt(z.imag()); };
    auto blocks = nlohmann::ordered_json::array();
    if (auto* p = std::get_if<RealPlaceParams>(&pp)) {
        j["place"] = "real";
        for (const auto& b : p->blocks) {
            nlohmann::ordered_json o;
            if (auto* g = std::get_if<GL1Block>(&b)) {
                o["kind"] = "gl1";
                o["delta"] = g->delta;
                o["t"] = cx(g->t);
            } else {
                const auto& d = std::get<DS2Block>(b);
                o["kind"] = "ds2";
                o["l"] = d.l;
                o["t"] = cx(d.t);
            }
            blocks.push_back(o);
        }
    } else {
        j["place"] = "complex";
        for (const auto& b : std::get<ComplexPlaceParams>(pp).blocks) {
            nlohmann::ordered_json o;
            o["l"] = b.l;
            o["t"] = cx(b.t);
            blocks.push_back(o);
        }
    }
    j["blocks"] = blocks;
    return j;
}

std::vector<real_t> parse_grid(const std::string& s) {
    auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError("grid 'a:b:n' expected: '" + s + "'");
    const real_t a = to_real(parts[0]), b = to_real(parts[1]);
    const real_t nr = to_real(parts[2]);
    if (nr < 1 || nr != std::floor(nr)) throw ConfigError("grid count must be a positive integer");
    const long n = static_cast<long>(nr);
    std::vector<real_t> xs;
    for (long i = 0; i < n; ++i) xs.push_back(n == 1 ? a : a + (b - a) * static_cast<real_t>(i) / static_cast<real_t>(n - 1));
    return xs;
}

std::vector<real_t> parse_real_list(const std::string& s) {
    std::vector<real_t> out;
    for (const auto& p : split(s, ',')) out.push_back(to_real(p));
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

std::pair<real_t, real_t> parse_interval(const std::string& s) {
    auto v = parse_real_list(s);
    if (v.size() != 2) throw ConfigError("interval 'a,b' expected");
    return {v[0], v[1]};
}

std::vector<complex_t> parse_s_grid(const std::string& s) {
    std::vector<complex_t> out;
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
        const auto colon = s.rfind(':');
        if (colon == std::string::npos || colon < dots) throw ConfigError("s-grid 'z0..z1:n' expected");
        const complex_t z0 = parse_complex(s.substr(0, dots));
        const complex_t z1 = parse_complex(s.substr(dots + 2, colon - dots - 2));
        const real_t nr = to_real(s.substr(colon + 1));
        if (nr < 1 || nr != std::floor(nr)) throw ConfigError("s-grid count must be a positive integer");
        const long n = static_cast<long>(nr);
        for (long i = 0; i < n; ++i)
            out.push_back(n == 1 ? z0 : z0 + (z1 - z0) * (static_cast<real_t>(i) / static_cast<real_t>(n - 1)));
        return out;
    }
    for (const auto& p : split(s, ';'))
        if (!trim(p).empty()) out.push_back(parse_complex(p));
    if (out.empty()) throw ConfigError("empty s-grid");
    return out;
}

void write_atomic(const std::string& path, const std::string& body) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw ConfigError("cannot write " + tmp);
        f << body;
        if (!f) throw ConfigError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw ConfigError("cannot rename " + tmp);
}

std::string fmt(real_t v) {
    char buf[64];
    for (int prec = 6; prec <= 21; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*Lg", prec, v);
        if (std::strtold(buf, nullptr) == v) break;
    }
    return buf;
}

}  // namespace rv
