#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ctt/tt_tensor.hpp"

namespace ctt {

enum class GameKind { Shoes, Airport, Majority, Bankruptcy, OneSeller };
enum class Weights { Shapley, Banzhaf };

// A cooperative game instance. Only the fields of the active kind are read:
//   Shoes:       players = 2L+1, the first L sell left shoes, the rest right.
//   Airport:     costs (one landing cost per player).
//   Majority:    weights_maj and threshold; nu(S) = [sum of weights >= M].
//   Bankruptcy:  claims and estate; nu(S) = max(0, E - sum of claims outside S).
//   OneSeller:   player 1 owns the good, prices[i] is what buyer i+2 offers;
//                nu(S) = best price among buyers in S when 1 is in S, else 0.
struct GameSpec {
    GameKind kind = GameKind::Shoes;
    int players = 3;
    std::vector<double> costs;
    std::vector<long long> weights_maj;
    long long threshold = 0;
    std::vector<double> claims;
    double estate = 0.0;
    std::vector<double> prices;
    Weights weights = Weights::Shapley;

    void validate() const;
};

struct PayoffVector {
    std::vector<double> values; // per player, 1-based player k at values[k-1]
};

// Coalition-size weight p(s) of the semivalue sum for a game on n players.
double semivalue_weight(Weights w, int players, int coalition_size);

// The two tensors whose ones-contractions difference is pi(k): entries
// p(|S|) nu(S u {k}) and p(|S|) nu(S) over S inside T minus {k}, built with
// mode k frozen at member/non-member. Airport and one-seller carry their
// cost factors; their payoff path below instead contracts one product
// tensor with a difference factor at mode k, but the pair is available for
// inspection and equals the difference path.
std::pair<TtTensor, TtTensor> build_game_tensors(const GameSpec& g, int k);

// Semivalue payoff of player k by tensor contraction.
double payoff(const GameSpec& g, int k);

// All players; independent contractions, run in parallel when enabled.
PayoffVector payoff_all(const GameSpec& g);

// O(|T|^2) recurrence for the one-seller game, valid for 1 < k < |T|.
// Prices must be sorted descending. `steps`, when given, receives the
// number of inner-loop updates performed.
double one_seller_iterative(const std::vector<double>& prices_desc, int k, int players,
                            Weights w, std::uint64_t* steps = nullptr);
double one_seller_iterative(const GameSpec& g, int k, std::uint64_t* steps = nullptr);

// Seeded instance generators mirroring the experiment recipes: majority
// weights are uniform integers in [1,10] with M = floor(sum/2)+1, bankruptcy
// claims likewise with E = sum/2, airport costs and seller prices uniform
// on [0,1] (prices sorted descending).
GameSpec random_game(GameKind kind, int players, std::uint64_t seed);

} // namespace ctt
