#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhh {

// letters are signed generator indices: +i for s_i, -i for its inverse
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;

    int writhe() const {
        int e = 0;
        for (int l : letters) e += (l > 0) ? 1 : -1;
        return e;
    }

    std::string str() const {
        std::ostringstream os;
        for (size_t i = 0; i < letters.size(); ++i) {
            if (i) os << " ";
            os << letters[i];
        }
        return os.str();
    }
};

struct BraidParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// accepts "2 -3 1" and "s2 s3^-1 s1"; exponents expand, so "s1^3" is s1 s1 s1
inline BraidWord parse_braid(const std::string& text, int strands) {
    if (strands < 1) throw BraidParseError("strand count must be at least 1");
    BraidWord w;
    w.strands = strands;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        int index = 0, exponent = 1;
        try {
            size_t used = 0;
            if (tok[0] == 's' || tok[0] == 'S') {
                std::string rest = tok.substr(1);
                size_t caret = rest.find('^');
                if (caret == std::string::npos) {
                    index = std::stoi(rest, &used);
                    if (used != rest.size()) throw BraidParseError("");
                } else {
                    index = std::stoi(rest.substr(0, caret), &used);
                    if (used != caret) throw BraidParseError("");
                    std::string e = rest.substr(caret + 1);
                    exponent = std::stoi(e, &used);
                    if (used != e.size()) throw BraidParseError("");
                }
            } else {
                index = std::stoi(tok, &used);
                if (used != tok.size()) throw BraidParseError("");
            }
        } catch (const std::exception&) {
            throw BraidParseError("malformed braid token '" + tok + "'");
        }
        if (exponent == 0) throw BraidParseError("zero exponent in token '" + tok + "'");
        int gen = index < 0 ? -index : index;
        int sign = (index < 0) ? -1 : 1;
        if (exponent < 0) {
            sign = -sign;
            exponent = -exponent;
        }
        if (gen < 1 || gen > strands - 1) {
            std::ostringstream os;
            os << "generator index " << index << " out of range for " << strands << " strands";
            throw BraidParseError(os.str());
        }
        for (int k = 0; k < exponent; ++k) w.letters.push_back(sign * gen);
    }
    return w;
}

}  // namespace hhh
