#pragma once

/*
 * Everything behind the command-line front end: run configuration, the
 * subcommand drivers, deterministic JSON/text reports, and the result
 * cache.  Reports are byte-stable for a fixed configuration: tables are
 * stored in sorted maps, JSON objects keep a fixed insertion order, and
 * cache hits replay the same serialized entries.
 */

#include <cstdlib>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hecke.hpp"
#include "homology.hpp"

namespace hhh {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCompute = 3;
constexpr int kExitCheckFailed = 4;
constexpr const char* kCacheVersion = "1";

struct RunConfig {
    int strands = 2;
    std::string word_text;
    int qmax = -1;  // negative: derive the default from the word
    bool reduce = true;
    bool json = false;
    std::string cache_dir;
    int jobs = 1;
};

struct Report {
    int exit_code = kExitOk;
    std::string output;
};

// ----- serialization -----

inline Json dims_to_json(const TrigradedDims& D, const BraidWord& w, int qmax) {
    Json j;
    j["strands"] = w.strands;
    j["word"] = w.str();
    j["qmax"] = qmax;
    Json entries = Json::array();
    for (const auto& [key, dim] : D.entries) {
        auto [q, h, t] = key;
        Json e;
        e["q"] = q;
        e["a"] = h;
        e["t"] = t;
        e["dim"] = dim;
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    j["poincare"] = poincare(D);
    j["euler"] = euler(D).str("q", "a");
    return j;
}

inline TrigradedDims dims_from_json(const Json& j) {
    TrigradedDims D;
    D.qmax_used = j.at("qmax").get<int>();
    for (const auto& e : j.at("entries"))
        D.add(e.at("q").get<int>(), e.at("a").get<int>(), e.at("t").get<int>(),
              e.at("dim").get<long long>());
    return D;
}

inline std::string dims_to_text(const TrigradedDims& D, const BraidWord& w, int qmax,
                                bool reduce) {
    std::ostringstream os;
    os << "HHH of braid [" << w.str() << "] on " << w.strands << " strands, qmax " << qmax
       << " (reduce " << (reduce ? "on" : "off") << ")\n";
    // human table sorted by (t, a, q)
    std::map<std::tuple<int, int, int>, long long> by_t;
    for (const auto& [key, dim] : D.entries) {
        auto [q, h, t] = key;
        by_t[{t, h, q}] = dim;
    }
    os << "   t   a   q  dim\n";
    for (const auto& [key, dim] : by_t) {
        auto [t, h, q] = key;
        os << std::setw(4) << t << std::setw(4) << h << std::setw(4) << q << std::setw(5) << dim
           << "\n";
    }
    os << "total rank " << D.total_rank() << "\n";
    os << "poincare: " << poincare(D) << "\n";
    os << "euler: " << euler(D).str("q", "a") << "\n";
    return os.str();
}

// ----- cache -----

inline std::string cache_file_name(const BraidWord& w, int qmax, bool reduce) {
    std::ostringstream os;
    os << "hhh-v" << kCacheVersion << "-m" << w.strands << "-w";
    if (w.letters.empty()) os << "e";
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) os << "_";
        os << (w.letters[i] < 0 ? "n" : "") << std::abs(w.letters[i]);
    }
    os << "-q" << qmax << "-r" << (reduce ? 1 : 0) << ".json";
    return os.str();
}

inline std::optional<TrigradedDims> cache_load(const std::string& dir, const BraidWord& w,
                                               int qmax, bool reduce) {
    if (dir.empty()) return std::nullopt;
    std::filesystem::path p = std::filesystem::path(dir) / cache_file_name(w, qmax, reduce);
    std::ifstream in(p);
    if (!in) return std::nullopt;
    try {
        Json j = Json::parse(in);
        return dims_from_json(j);
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable entries are treated as misses
    }
}

inline void cache_store(const std::string& dir, const BraidWord& w, int qmax, bool reduce,
                        const TrigradedDims& D) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::filesystem::path p = std::filesystem::path(dir) / cache_file_name(w, qmax, reduce);
    std::filesystem::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << dims_to_json(D, w, qmax).dump(2) << "\n";
    }
    std::filesystem::rename(tmp, p, ec);  // atomic publish
}

// ----- subcommand drivers -----

inline Report run_hhh(const RunConfig& cfg) {
    BraidWord w;
    try {
        w = parse_braid(cfg.word_text, cfg.strands);
    } catch (const BraidParseError& e) {
        return {kExitParse, std::string("parse error: ") + e.what() + "\n"};
    }
    int qmax = cfg.qmax >= 0 ? cfg.qmax : default_qmax(w);
    if (qmax % 2 != 0 || cfg.jobs < 1)
        return {kExitParse, "config error: qmax must be even and jobs >= 1\n"};
    TrigradedDims D;
    try {
        if (auto hit = cache_load(cfg.cache_dir, w, qmax, cfg.reduce)) {
            D = *hit;
        } else {
            D = hhh(w, qmax, cfg.reduce, cfg.jobs);
            cache_store(cfg.cache_dir, w, qmax, cfg.reduce, D);
        }
    } catch (const std::exception& e) {
        return {kExitCompute, std::string("compute error: ") + e.what() + "\n"};
    }
    if (cfg.json) return {kExitOk, dims_to_json(D, w, qmax).dump(2) + "\n"};
    return {kExitOk, dims_to_text(D, w, qmax, cfg.reduce)};
}

inline Report run_homfly(const RunConfig& cfg) {
    BraidWord w;
    try {
        w = parse_braid(cfg.word_text, cfg.strands);
    } catch (const BraidParseError& e) {
        return {kExitParse, std::string("parse error: ") + e.what() + "\n"};
    }
    try {
        HomflyValue h = homfly(w);
        if (cfg.json) {
            Json j;
            j["strands"] = w.strands;
            j["word"] = w.str();
            j["homfly"] = h.str();
            return {kExitOk, j.dump(2) + "\n"};
        }
        return {kExitOk, h.str() + "\n"};
    } catch (const std::exception& e) {
        return {kExitCompute, std::string("compute error: ") + e.what() + "\n"};
    }
}

inline Report run_reduce_info(const RunConfig& cfg) {
    BraidWord w;
    try {
        w = parse_braid(cfg.word_text, cfg.strands);
    } catch (const BraidParseError& e) {
        return {kExitParse, std::string("parse error: ") + e.what() + "\n"};
    }
    try {
        auto census = [](const BimoduleComplex& c) {
            Json j;
            j["total"] = c.total_summands();
            Json terms;
            for (const auto& [t, list] : c.terms) {
                Json arr = Json::array();
                for (const auto& s : list) arr.push_back(s.label());
                terms[std::to_string(t)] = std::move(arr);
            }
            j["terms"] = std::move(terms);
            return j;
        };
        auto full = braid_complex(w);
        auto red = gaussian_reduce(full);
        if (cfg.json) {
            Json j;
            j["strands"] = w.strands;
            j["word"] = w.str();
            j["before"] = census(full);
            j["after"] = census(red);
            return {kExitOk, j.dump(2) + "\n"};
        }
        std::ostringstream os;
        os << "before: " << full.total_summands() << " summands; after: " << red.total_summands()
           << "\n";
        auto print = [&](const char* name, const BimoduleComplex& c) {
            os << name << ":\n";
            for (const auto& [t, list] : c.terms) {
                os << "  t=" << t << ":";
                for (const auto& s : list) os << " " << s.label();
                os << "\n";
            }
        };
        print("full complex", full);
        print("reduced complex", red);
        return {kExitOk, os.str()};
    } catch (const std::exception& e) {
        return {kExitCompute, std::string("compute error: ") + e.what() + "\n"};
    }
}

// rewrite a two-variable link invariant in the Euler-characteristic
// variables through the recorded convention a^2 = -q^{-2} A^{-1}
// (so a^{2k} becomes (-1)^k q^{-2k} A^{-k}); defined for even a-exponents
inline std::optional<Laurent2> homfly_in_euler_vars(const HomflyValue& h) {
    if (!h.is_laurent()) return std::nullopt;
    Laurent2 out;
    for (const auto& [e, c] : h.num.terms()) {
        if (e.second % 2 != 0) return std::nullopt;
        int k = e.second / 2;
        out.add_term(e.first - 2 * k, -k, (k % 2 == 0) ? c : -c);
    }
    return out;
}

struct EulerCheck {
    bool ok = false;
    std::string detail;
    std::optional<std::tuple<int, int, int>> factor;  // chi = sign*q^e1*A^e2 * converted
};

inline EulerCheck check_euler_once(const BraidWord& w, int qmax, int jobs) {
    EulerCheck out;
    TrigradedDims D = hhh(w, qmax, true, jobs);
    Laurent2 chi = euler(D);
    HomflyValue H = homfly(w);
    std::ostringstream os;
    os << "word [" << w.str() << "] on " << w.strands << " strands\n";
    os << "  euler(HHH) = " << chi.str("q", "a") << "\n";
    os << "  homfly     = " << H.str() << "\n";
    auto conv = homfly_in_euler_vars(H);
    if (!conv) {
        os << "  conversion to euler variables unavailable (odd a-powers or denominators)\n";
        out.detail = os.str();
        return out;
    }
    auto f = monomial_ratio(chi, *conv);
    if (!f) {
        os << "  NO monomial factor matches\n";
        out.detail = os.str();
        return out;
    }
    auto [sign, e1, e2] = *f;
    os << "  euler = " << (sign < 0 ? "-" : "") << "q^" << e1 << "*a^" << e2
       << " * homfly(converted)\n";
    out.ok = true;
    out.factor = *f;
    out.detail = os.str();
    return out;
}

inline Report run_check_euler(const RunConfig& cfg) {
    BraidWord w;
    try {
        w = parse_braid(cfg.word_text, cfg.strands);
    } catch (const BraidParseError& e) {
        return {kExitParse, std::string("parse error: ") + e.what() + "\n"};
    }
    int qmax = cfg.qmax >= 0 ? cfg.qmax : default_qmax(w);
    if (qmax % 2 != 0) return {kExitParse, "config error: qmax must be even\n"};
    try {
        EulerCheck c = check_euler_once(w, qmax, cfg.jobs);
        std::string verdict = c.ok ? "PASS euler matches homfly up to the reported monomial\n"
                                   : "FAIL euler does not match homfly\n";
        return {c.ok ? kExitOk : kExitCheckFailed, c.detail + verdict};
    } catch (const std::exception& e) {
        return {kExitCompute, std::string("compute error: ") + e.what() + "\n"};
    }
}

inline Report run_check_invariance(const RunConfig& cfg) {
    BraidWord w;
    try {
        w = parse_braid(cfg.word_text, cfg.strands);
    } catch (const BraidParseError& e) {
        return {kExitParse, std::string("parse error: ") + e.what() + "\n"};
    }
    int qmax = cfg.qmax >= 0 ? cfg.qmax : default_qmax(w);
    if (qmax % 2 != 0) return {kExitParse, "config error: qmax must be even\n"};
    std::ostringstream os;
    bool ok = true;
    try {
        TrigradedDims base = hhh(w, qmax, true, cfg.jobs);
        auto note = [&](const std::string& name, bool pass,
                        const std::optional<std::array<int, 3>>& d) {
            os << (pass ? "PASS " : "FAIL ") << name;
            if (pass && d)
                os << " (shift " << (*d)[0] << "," << (*d)[1] << "," << (*d)[2] << ")";
            os << "\n";
            ok = ok && pass;
        };

        if (w.strands >= 3) {
            auto a = hhh(BraidWord{w.strands, {1, 2, 1}}, qmax, true, cfg.jobs);
            auto b = hhh(BraidWord{w.strands, {2, 1, 2}}, qmax, true, cfg.jobs);
            note("braid relation s1 s2 s1 = s2 s1 s2", a == b,
                 std::array<int, 3>{0, 0, 0});
        }
        {
            BraidWord ins = w;
            int g = w.letters.empty() ? 1 : std::abs(w.letters.front());
            ins.letters.push_back(g);
            ins.letters.push_back(-g);
            auto d = compare_up_to_shift_truncated(base, hhh(ins, qmax, true, cfg.jobs));
            note("insertion of s s^-1", d.has_value() && *d == std::array<int, 3>{0, 0, 0}, d);
        }
        {
            int g = w.letters.empty() ? 1 : std::abs(w.letters.front());
            BraidWord conj{w.strands, {g}};
            conj.letters.insert(conj.letters.end(), w.letters.begin(), w.letters.end());
            conj.letters.push_back(-g);
            auto d = compare_up_to_shift_truncated(base, hhh(conj, qmax, true, cfg.jobs));
            note("conjugation", d.has_value(), d);
        }
        {
            BraidWord stab{w.strands + 1, w.letters};
            stab.letters.push_back(w.strands);
            auto d = compare_up_to_shift_truncated(base, hhh(stab, qmax, true, cfg.jobs));
            note("positive stabilization", d.has_value(), d);
        }
    } catch (const std::exception& e) {
        return {kExitCompute, std::string("compute error: ") + e.what() + "\n"};
    }
    return {ok ? kExitOk : kExitCheckFailed, os.str()};
}

// the decomposition checks: B1 B1, far commutation, and the middle relation
inline Report run_check_soergel() {
    std::ostringstream os;
    bool ok = true;
    auto note = [&](const std::string& name, bool pass) {
        os << (pass ? "PASS " : "FAIL ") << name << "\n";
        ok = ok && pass;
    };
    try {
        {
            auto B = elementary_bimodule(2, 1);
            auto iso = is_isomorphic(tensor_bimodule(B, B), direct_sum(B, shift(B, 2)));
            note("B1 (x) B1 = B1 (+) B1{2} at m=2", iso.has_value());
        }
        {
            auto B1 = elementary_bimodule(4, 1);
            auto B3 = elementary_bimodule(4, 3);
            auto iso = is_isomorphic(tensor_bimodule(B1, B3), tensor_bimodule(B3, B1));
            note("B1 (x) B3 = B3 (x) B1 at m=4", iso.has_value());
        }
        {
            auto B1 = elementary_bimodule(3, 1);
            auto B2 = elementary_bimodule(3, 2);
            auto P = tensor_bimodule(tensor_bimodule(B1, B2), B1);
            auto Pp = tensor_bimodule(tensor_bimodule(B2, B1), B2);
            auto p1 = find_split_pair(shift(B1, 2), P);
            auto p2 = find_split_pair(shift(B2, 2), Pp);
            bool pass = p1.has_value() && p2.has_value();
            Laurent want;
            want.add_term(0, rat(1));
            want.add_term(2, rat(2));
            want.add_term(4, rat(2));
            want.add_term(6, rat(1));
            if (pass) {
                auto comp = [](const BimodulePtr& big,
                               const std::pair<BimoduleMap, BimoduleMap>& pr) {
                    BimoduleMap cmpl{big, big,
                                     PolyMatrix::identity(big->rank(), big->vars()) -
                                         pr.first.matrix * pr.second.matrix,
                                     0};
                    return split_idempotent(big, cmpl);
                };
                auto S = comp(P, *p1);
                auto Sp = comp(Pp, *p2);
                pass = S.module->graded_rank() == want && Sp.module->graded_rank() == want &&
                       is_isomorphic(S.module, Sp.module).has_value();
            }
            note("middle relation complements agree at m=3", pass);
        }
    } catch (const std::exception& e) {
        return {kExitCompute, std::string("compute error: ") + e.what() + "\n"};
    }
    return {ok ? kExitOk : kExitCheckFailed, os.str()};
}

inline Report run_check_hecke(int m) {
    if (m < 2 || m > 4) return {kExitParse, "config error: hecke checks support 2 <= m <= 4\n"};
    std::ostringstream os;
    bool ok = true;
    auto note = [&](const std::string& name, bool pass) {
        os << (pass ? "PASS " : "FAIL ") << name << "\n";
        ok = ok && pass;
    };
    try {
        for (int i = 1; i <= m - 1; ++i) {
            auto sq = t_multiply(hecke_T(m, i), hecke_T(m, i));
            HeckeElement want = hecke_T(m, i) * (Laurent::mono(2, rat(1)) - Laurent::one()) +
                                hecke_identity(m) * Laurent::mono(2, rat(1));
            note("quadratic relation T" + std::to_string(i), sq == want);
        }
        for (int i = 1; i + 1 <= m - 1; ++i) {
            auto a = t_multiply(t_multiply(hecke_T(m, i), hecke_T(m, i + 1)), hecke_T(m, i));
            auto b = t_multiply(t_multiply(hecke_T(m, i + 1), hecke_T(m, i)), hecke_T(m, i + 1));
            note("braid relation T" + std::to_string(i) + " T" + std::to_string(i + 1), a == b);
        }
        for (int i = 1; i <= m - 1; ++i)
            for (int j = i + 2; j <= m - 1; ++j) {
                auto a = t_multiply(hecke_T(m, i), hecke_T(m, j));
                auto b = t_multiply(hecke_T(m, j), hecke_T(m, i));
                note("far commutation T" + std::to_string(i) + " T" + std::to_string(j), a == b);
            }
        if (m <= 3) {
            auto kl = kl_elements(m);
            bool fixed = true, tri = true;
            for (const auto& [w, cw] : kl) {
                fixed = fixed && iota(cw) == cw;
                for (const auto& [y, coeff] : cw.terms) {
                    tri = tri && bruhat_leq(y, w);
                    for (const auto& [e, c] : coeff.terms()) {
                        int pdeg = e + w.length();
                        tri = tri && pdeg >= 0 && pdeg % 2 == 0;
                        if (y == w)
                            tri = tri && pdeg == 0 && c == 1;
                        else
                            tri = tri && pdeg < w.length() - y.length();
                    }
                }
            }
            note("kl basis iota-fixed", fixed);
            note("kl basis unitriangular", tri);
            if (m == 3) {
                bool pos = true;
                for (const auto& [w, cw] : kl)
                    for (const auto& [y, cy] : kl) {
                        auto rest = t_multiply(cw, cy);
                        for (auto it = kl.rbegin(); it != kl.rend(); ++it) {
                            auto term = rest.terms.find(it->first);
                            if (term == rest.terms.end()) continue;
                            Laurent c =
                                term->second * Laurent::mono(it->first.length(), rat(1));
                            for (const auto& [e, v] : c.terms())
                                pos = pos && sgn(v.get_num()) > 0 && v.get_den() == 1;
                            rest -= it->second * c;
                        }
                        pos = pos && rest.terms.empty();
                    }
                note("kl structure constants in N[q,q^-1] (36 products)", pos);
            }
        }
    } catch (const std::exception& e) {
        return {kExitCompute, std::string("compute error: ") + e.what() + "\n"};
    }
    return {ok ? kExitOk : kExitCheckFailed, os.str()};
}

inline std::string default_cache_dir() {
    const char* env = std::getenv("HHH_CACHE_DIR");
    return env ? std::string(env) : std::string();
}

}  // namespace hhh
