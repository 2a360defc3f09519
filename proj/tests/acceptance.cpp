// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails.  Expected values are pinned here; tolerances are exact
// (the arithmetic is rational throughout), with grading comparisons up to
// one uniform shift where stated.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "hhh/cli.hpp"
#include "oracles.hpp"

using namespace hhh;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, double secs, const std::string& note = "") {
    std::ostringstream os;
    os << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " [" << std::fixed
       << std::setprecision(1) << secs << "s]";
    if (!note.empty()) os << " -- " << note;
    std::cout << os.str() << std::endl;
    if (!ok) ++failures;
}

template <typename F>
void criterion(int id, const std::string& name, F&& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body(note);
    } catch (const std::exception& e) {
        note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(id, name, ok, secs, note);
}

TrigradedDims table(std::initializer_list<std::tuple<int, int, int>> keys) {
    TrigradedDims D;
    for (auto [q, h, t] : keys) D.add(q, h, t, 1);
    return D;
}

// entries at hochschild degree h as a (q -> t) map; fails the caller if any
// dimension exceeds 1
std::optional<std::map<int, int>> layer(const TrigradedDims& D, int h) {
    std::map<int, int> out;
    for (const auto& [key, dim] : D.entries) {
        auto [q, hh, t] = key;
        if (hh != h) continue;
        if (dim != 1 || out.count(q)) return std::nullopt;
        out[q] = t;
    }
    return out;
}

std::vector<int> torus_word(int n) { return std::vector<int>(n, 1); }

}  // namespace

int main() {
    criterion(1, "unknot normalizations", [](std::string& note) {
        auto empty1 = hhh::hhh(BraidWord{1, {}}, 8);
        auto pos = hhh::hhh(BraidWord{2, {1}}, 8);
        auto neg = hhh::hhh(BraidWord{2, {-1}}, 8);
        bool ok = empty1 == table({{0, 0, 0}}) && pos == table({{0, 0, 0}}) &&
                  neg == table({{0, 1, 1}});
        auto d1 = compare_up_to_shift(empty1, pos);
        auto d2 = compare_up_to_shift(empty1, neg);
        ok = ok && d1.has_value() && *d1 == std::array<int, 3>{0, 0, 0};
        ok = ok && d2.has_value() && *d2 == std::array<int, 3>{0, 1, 1};
        return ok;
    });

    criterion(2, "trefoil table (sigma_1^3, qmax 12)", [](std::string& note) {
        auto D = hhh::hhh(BraidWord{2, torus_word(3)}, 12);
        if (D.entries.size() != 3 || D.total_rank() != 3) {
            note = "wrong class count";
            return false;
        }
        auto h0 = layer(D, 0);
        auto h1 = layer(D, 1);
        if (!h0 || !h1 || h0->size() != 2 || h1->size() != 1) return false;
        if (!h0->count(4) || !h0->count(0) || !h1->count(4)) return false;
        int t4 = h0->at(4), t0 = h0->at(0);
        if (t0 != t4 + 2) {
            note = "h=0 t-values do not differ by 2 in the expected direction";
            return false;
        }
        if (h1->at(4) != t0) {
            note = "h=1 class not at the larger h=0 t-value";
            return false;
        }
        return true;
    });

    criterion(3, "T(2,5) table (sigma_1^5, qmax 20)", [](std::string& note) {
        auto D = hhh::hhh(BraidWord{2, torus_word(5)}, 20);
        if (D.total_rank() != 5) {
            note = "rank != 5";
            return false;
        }
        auto h0 = layer(D, 0);
        auto h1 = layer(D, 1);
        if (!h0 || !h1 || h0->size() != 3 || h1->size() != 2) return false;
        if (!h0->count(8) || !h0->count(4) || !h0->count(0)) return false;
        if (!h1->count(8) || !h1->count(4)) return false;
        int t0 = h0->at(8);
        bool ok = h0->at(4) == t0 + 2 && h0->at(0) == t0 + 4 && h1->at(8) == t0 + 2 &&
                  h1->at(4) == t0 + 4;
        if (!ok) note = "t-pattern is not the arithmetic progression";
        return ok;
    });

    criterion(4, "minimal complex census for sigma_1^n, n in {2,3,5}", [](std::string& note) {
        for (int n : {2, 3, 5}) {
            auto red = gaussian_reduce(braid_complex(BraidWord{2, torus_word(n)}));
            if (red.total_summands() != n + 1) {
                note = "n=" + std::to_string(n) + ": wrong summand count";
                return false;
            }
            int tmin = red.min_t();
            const auto& head = red.terms.at(tmin);
            if (head.size() != 1 || head[0].label() != "R{" + std::to_string(2 * n) + "}") {
                note = "n=" + std::to_string(n) + ": head summand wrong";
                return false;
            }
            for (int k = 1; k <= n; ++k) {
                const auto& list = red.terms.at(tmin + k);
                std::string want = "B1{" + std::to_string(2 * (n - k)) + "}";
                if (list.size() != 1 || list[0].label() != want) {
                    note = "n=" + std::to_string(n) + ": wrong summand at step " +
                           std::to_string(k);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(5, "reduction soundness on 20 random words (qmax 12)", [](std::string& note) {
        std::mt19937 rng(0xACCE55);
        for (int trial = 0; trial < 20; ++trial) {
            int m = (trial < 10) ? 2 : 3;
            int len = 1 + static_cast<int>(rng() % 5);
            BraidWord w{m, {}};
            for (int k = 0; k < len; ++k) {
                int g = 1 + static_cast<int>(rng() % (m - 1));
                w.letters.push_back(rng() % 2 ? g : -g);
            }
            auto on = hhh::hhh(w, 12, true);
            auto off = hhh::hhh(w, 12, false);
            if (on != off) {
                note = "mismatch on [" + w.str() + "] m=" + std::to_string(m);
                return false;
            }
        }
        return true;
    });

    criterion(6, "invariance suite", [](std::string& note) {
        // braid relation: equal with zero shift
        auto a = hhh::hhh(BraidWord{3, {1, 2, 1}}, 12);
        auto b = hhh::hhh(BraidWord{3, {2, 1, 2}}, 12);
        if (a != b) {
            note = "braid relation failed";
            return false;
        }
        // insertion of sigma_i sigma_i^{-1}
        for (auto& [m, letters] : std::vector<std::pair<int, std::vector<int>>>{
                 {2, {1, 1, 1}}, {3, {1, -2}}}) {
            BraidWord w{m, letters};
            BraidWord ins = w;
            ins.letters.push_back(1);
            ins.letters.push_back(-1);
            auto base = hhh::hhh(w, 12);
            auto with = hhh::hhh(ins, 12);
            auto d = compare_up_to_shift_truncated(base, with);
            if (!d.has_value() || *d != std::array<int, 3>{0, 0, 0}) {
                note = "insertion failed on [" + w.str() + "]";
                return false;
            }
        }
        // conjugation on 5 random pairs, up to shift
        std::mt19937 rng(0xC0711);
        for (int trial = 0; trial < 5; ++trial) {
            int m = 2 + trial % 2;
            int len = 1 + static_cast<int>(rng() % 4);
            BraidWord w{m, {}};
            for (int k = 0; k < len; ++k) {
                int g = 1 + static_cast<int>(rng() % (m - 1));
                w.letters.push_back(rng() % 2 ? g : -g);
            }
            int g = 1 + static_cast<int>(rng() % (m - 1));
            BraidWord conj{m, {g}};
            conj.letters.insert(conj.letters.end(), w.letters.begin(), w.letters.end());
            conj.letters.push_back(-g);
            auto d = compare_up_to_shift_truncated(hhh::hhh(w, 12), hhh::hhh(conj, 12));
            if (!d.has_value()) {
                note = "conjugation failed on [" + w.str() + "]";
                return false;
            }
        }
        // stabilization: trefoil on 2 strands vs 3 strands
        auto t2 = hhh::hhh(BraidWord{2, torus_word(3)}, 12);
        auto t3 = hhh::hhh(BraidWord{3, {1, 1, 1, 2}}, 12);
        if (!compare_up_to_shift(t2, t3).has_value()) {
            note = "stabilization failed";
            return false;
        }
        // cross-presentation: T(2,3) = T(3,2)
        auto tp = hhh::hhh(BraidWord{3, {1, 2, 1, 2}}, 16);
        if (!compare_up_to_shift(t2, tp).has_value()) {
            note = "cross-presentation failed";
            return false;
        }
        return true;
    });

    criterion(7, "top hochschild degree = invariant subspace (q <= 12)", [](std::string& note) {
        auto B = elementary_bimodule(2, 1);
        auto BB = tensor_bimodule(B, B);
        for (const auto& M : {regular_bimodule(2), B, BB}) {
            auto C = koszul_hh_complex(M);
            for (int q = 0; q <= 12; q += 2) {
                auto hom = homology_with_reps(degree_slice(C, q + 2));
                int got = hom.at(1).dim;
                int want = hhhtest::invariant_subspace_dim(M, q);
                if (got != want) {
                    note = "q=" + std::to_string(q) + ": " + std::to_string(got) +
                           " != " + std::to_string(want);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(8, "soergel decomposition relations", [](std::string& note) {
        Report r = run_check_soergel();
        if (r.exit_code != kExitOk) note = r.output;
        return r.exit_code == kExitOk;
    });

    criterion(9, "hecke algebra suite (m <= 4)", [](std::string& note) {
        for (int m = 2; m <= 4; ++m) {
            Report r = run_check_hecke(m);
            if (r.exit_code != kExitOk) {
                note = "m=" + std::to_string(m) + ": " + r.output;
                return false;
            }
        }
        return true;
    });

    criterion(10, "euler characteristic against homfly", [](std::string& note) {
        auto tref = check_euler_once(BraidWord{2, torus_word(3)}, 12, 1);
        auto t25 = check_euler_once(BraidWord{2, torus_word(5)}, 20, 1);
        auto fig8 = check_euler_once(BraidWord{3, {1, -2, 1, -2}}, 16, 1);
        if (!tref.ok || !t25.ok || !fig8.ok) {
            note = "a monomial match failed";
            return false;
        }
        auto [s3, q3, a3] = *tref.factor;
        auto [s5, q5, a5] = *t25.factor;
        auto [s8, q8, a8] = *fig8.factor;
        std::ostringstream os;
        os << "monomials: trefoil " << (s3 < 0 ? "-" : "") << "q^" << q3 << "a^" << a3
           << ", T(2,5) " << (s5 < 0 ? "-" : "") << "q^" << q5 << "a^" << a5 << ", fig8 "
           << (s8 < 0 ? "-" : "") << "q^" << q8 << "a^" << a8;
        note = os.str();
        // writhe accounting between the torus knots: e goes 3 -> 5, so the
        // factors must differ by exactly (-A)^{-(delta e)/2} = (-A)^{-1}
        int de = 5 - 3;
        bool consistent = (q5 == q3) && (a5 - a3 == -de / 2) &&
                          (s5 * s3 == ((de / 2) % 2 == 0 ? 1 : -1));
        if (!consistent) note += " -- torus factors inconsistent with writhe";
        return consistent;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
