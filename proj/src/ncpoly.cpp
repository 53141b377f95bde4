#include "lawkit/ncpoly.hpp"

#include <cctype>
#include <stdexcept>

namespace lawkit {

NCPoly NCPoly::one() { return monomial(1, {}); }

NCPoly NCPoly::generator(int g) { return monomial(1, {g}); }

NCPoly NCPoly::monomial(long long coeff, Word w) {
    NCPoly p;
    if (coeff) p.coeffs_.emplace(std::move(w), coeff);
    return p;
}

void NCPoly::add_monomial(long long coeff, const Word& w) {
    if (!coeff) return;
    auto it = coeffs_.find(w);
    if (it == coeffs_.end()) {
        coeffs_.emplace(w, coeff);
    } else {
        it->second += coeff;
        if (!it->second) coeffs_.erase(it);
    }
}

NCPoly NCPoly::operator+(const NCPoly& other) const {
    NCPoly out = *this;
    for (const auto& [w, c] : other.coeffs_) out.add_monomial(c, w);
    return out;
}

NCPoly NCPoly::operator-(const NCPoly& other) const {
    NCPoly out = *this;
    for (const auto& [w, c] : other.coeffs_) out.add_monomial(-c, w);
    return out;
}

NCPoly NCPoly::operator-() const {
    NCPoly out;
    for (const auto& [w, c] : coeffs_) out.coeffs_.emplace(w, -c);
    return out;
}

NCPoly NCPoly::operator*(const NCPoly& other) const {
    NCPoly out;
    for (const auto& [w1, c1] : coeffs_) {
        for (const auto& [w2, c2] : other.coeffs_) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            out.add_monomial(c1 * c2, w);
        }
    }
    return out;
}

NCPoly NCPoly::scaled(long long c) const {
    NCPoly out;
    if (!c) return out;
    for (const auto& [w, v] : coeffs_) out.coeffs_.emplace(w, v * c);
    return out;
}

std::string NCPoly::str(const std::vector<std::string>& gen_names) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : coeffs_) {
        long long abs = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string mono;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) mono += '.';
            mono += gen_names.at(static_cast<std::size_t>(w[i]));
        }
        if (mono.empty()) {
            out += std::to_string(abs);
        } else {
            if (abs != 1) out += std::to_string(abs) + "*";
            out += mono;
        }
    }
    return out;
}

NCPoly NCPoly::parse(const std::string& text, const std::vector<std::string>& gen_names) {
    NCPoly out;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto gen_index = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < gen_names.size(); ++i)
            if (gen_names[i] == name) return static_cast<int>(i);
        throw std::runtime_error("unknown ring generator: " + name);
    };
    bool expect_term = true;
    long long sign = 1;
    while (true) {
        skip();
        if (pos >= text.size()) break;
        char c = text[pos];
        if (c == '+' || c == '-') {
            sign *= c == '-' ? -1 : 1;
            ++pos;
            expect_term = true;
            continue;
        }
        if (!expect_term) throw std::runtime_error("unexpected token in polynomial");
        long long coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coeff = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                coeff = coeff * 10 + (text[pos++] - '0');
            have_coeff = true;
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip();
            }
        }
        Word w;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            std::string name;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                name += text[pos++];
            w.push_back(gen_index(name));
            if (pos < text.size() && text[pos] == '.')
                ++pos;
            else
                break;
        }
        if (w.empty() && !have_coeff)
            throw std::runtime_error("expected monomial in polynomial");
        out.add_monomial(sign * coeff, w);
        sign = 1;
        expect_term = false;
    }
    if (expect_term && !out.is_zero())
        throw std::runtime_error("dangling sign in polynomial");
    return out;
}

}  // namespace lawkit
