// Finite groups given by multiplication tables.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lawkit {

struct FiniteGroup {
    int order = 1;
    std::vector<std::vector<int>> mul;  // mul[a][b], elements 0..order-1
    std::string name = "G";

    int identity() const;
    int inverse(int a) const;
    bool abelian() const;
    void validate() const;  // throws on non-group tables

    int times(int a, int b) const { return mul[a][b]; }

    static FiniteGroup trivial();
    static FiniteGroup cyclic(int n);
    static FiniteGroup symmetric3();
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
};

}  // namespace lawkit
