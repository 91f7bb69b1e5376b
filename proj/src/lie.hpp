#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace mlde3::lie {

enum class Family { A, B, C, D, E6, E7, E8, F4, G2 };

struct SimpleType {
    Family family = Family::A;
    unsigned rank = 1;

    auto operator<=>(const SimpleType&) const = default;
};

// "A1", "D11", "E8". parse_type also takes "C2" for the theta comparison.
std::string type_name(SimpleType t);
SimpleType parse_type(const std::string& s);

// Rank ranges of the dimension table: A >= 1, B >= 2, C >= 3, D >= 4,
// exceptional types at their own rank.
bool is_admissible(SimpleType t);

struct DimRank {
    unsigned long dim = 0;
    unsigned rank = 0;
};

// Closed form; throws invalid_argument on an inadmissible rank.
DimRank dim_rank(SimpleType t);

// Integer coordinates, scaled by 2 so the E/F half-integer roots stay integral.
using Root = std::vector<int>;

struct RootSystem {
    SimpleType type;
    std::vector<Root> positive_roots;  // sorted, positive = first nonzero coordinate > 0
    Root theta;                        // the unique maximal positive root
};

// Admissible types, plus C2 (isomorphic to B2) so the theta comparison covers rank 2.
RootSystem root_system(SimpleType t);

struct ThetaCount {
    unsigned long brute_force = 0;    // #{gamma > 0 : theta - gamma > 0}
    unsigned long halfform = 0;       // (dim G - dim C_G(S) - 3) / 2
    unsigned long centralizer_dim = 0;
    std::string centralizer;          // e.g. "A1+B1"
};

ThetaCount theta_count_detail(SimpleType t);
// Throws internal when the two counts disagree.
unsigned long theta_count(SimpleType t);

// dim L(G, k)_2 = dim G + C(dim G + 1, 2) - [k = 1] (1 + N_G).
unsigned long dim_weight2(SimpleType t, unsigned level);

struct LeviConstraints {
    std::optional<unsigned> total_rank;  // exact rank, abelian part included
    std::optional<unsigned> max_rank;
    bool allow_abelian = true;
    std::vector<SimpleType> forbidden;
    unsigned long cap = 10000;           // largest accepted target_dim
    std::size_t max_results = 1000000;
};

struct Decomposition {
    unsigned long abelian_dim = 0;
    std::vector<SimpleType> components;  // nonincreasing dimension, then family, then rank

    unsigned rank() const;
    bool contains(const std::vector<SimpleType>& types) const;  // as a sub-multiset
};

std::string to_string(const Decomposition& d);

// Every multiset {abelian part; simple components} with total dimension
// target_dim satisfying the constraints. Throws invalid_argument when
// target_dim exceeds the cap or the result count exceeds max_results.
std::vector<Decomposition> levi_search(unsigned long target_dim, const LeviConstraints& c = {});

// Dimension table as markdown, ranks 1..max_rank for the classical rows.
std::string dimension_table_markdown(unsigned max_rank = 10);

}  // namespace mlde3::lie
