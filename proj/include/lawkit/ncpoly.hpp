// Integer-linear combinations of words in ring generators, and ring
// presentations by generators and relations.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace lawkit {

// Monomials are words of generator indices; the empty word is 1.
// Zero-coefficient monomials are never stored.
class NCPoly {
public:
    using Word = std::vector<int>;

    NCPoly() = default;
    static NCPoly zero() { return {}; }
    static NCPoly one();
    static NCPoly generator(int g);
    static NCPoly monomial(long long coeff, Word w);

    bool is_zero() const { return coeffs_.empty(); }
    const std::map<Word, long long>& coeffs() const { return coeffs_; }

    NCPoly operator+(const NCPoly& other) const;
    NCPoly operator-(const NCPoly& other) const;
    NCPoly operator-() const;
    NCPoly operator*(const NCPoly& other) const;
    NCPoly scaled(long long c) const;

    bool operator==(const NCPoly& other) const { return coeffs_ == other.coeffs_; }
    bool operator!=(const NCPoly& other) const { return !(*this == other); }

    void add_monomial(long long coeff, const Word& w);

    // Textual form like "3*R1.C2 - 1" given generator names.
    std::string str(const std::vector<std::string>& gen_names) const;
    static NCPoly parse(const std::string& text, const std::vector<std::string>& gen_names);

private:
    std::map<Word, long long> coeffs_;
};

struct RingPresentation {
    std::vector<std::string> generators;
    std::vector<std::pair<NCPoly, NCPoly>> relations;  // lhs = rhs
    bool unital = true;
};

}  // namespace lawkit
