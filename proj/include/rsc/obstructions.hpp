#pragma once

#include <optional>
#include <vector>

#include "rsc/cohomology.hpp"
#include "rsc/complex.hpp"

namespace rsc {

struct Flower {
    Simplex K;
    Simplex C;
    std::vector<Simplex> petals;  // C + w for w in K \ C, ascending in w
};

// For k = j pass C = first j vertices of K.
Flower make_flower(const Simplex& K, const Simplex& C);

struct ObstructionCopy {
    enum class Kind { M, Mhat };
    Kind kind = Kind::M;
    int j = 0;
    int k = 0;
    Simplex K;
    Simplex C;
    int w = 0;  // Mhat only
    int a = 0;  // Mhat only

    friend bool operator==(const ObstructionCopy&, const ObstructionCopy&) = default;
};

bool is_K_localised(const Complex& c, const Simplex& J, const Simplex& K);

std::vector<ObstructionCopy> find_M_copies(const Complex& c, int j, int k);
std::vector<ObstructionCopy> find_Mhat_copies(const Complex& c, int j, int k);

// The cochain taking value r on each petal when the petal is ordered as in Ord(K,C).
Cochain build_f_M_r(const ObstructionCopy& m, std::int64_t r, const Ring& ring);

struct LocalObstacle {
    Simplex K;
    std::vector<Simplex> localised;  // K-localised j-subsets of K
};

std::vector<LocalObstacle> find_local_obstacles(const Complex& c, int j);

struct TraversalWitness {
    std::vector<Simplex> S;
    std::vector<Simplex> T;
    std::vector<int> t_vector;  // t_vector[i] counts members of T of dimension j+1+i, up to d
    std::vector<Simplex> exploration;  // order in which the members of S are reached
    int vertex_count = 0;

    bool satisfies_bounds() const;
};

std::optional<TraversalWitness> is_traversable(const Complex& c, std::vector<Simplex> S);

inline constexpr std::size_t kMaxBadSupportSimplices = 16;

// Minimum-support j-cocycle that is neither a coboundary nor in the span of the f_{M,1}
// cochains of the complex's M copies (up to coboundaries). Prime fields only.
std::optional<Cochain> minimal_bad_support(const Complex& c, int j, const Ring& ring);

}  // namespace rsc
