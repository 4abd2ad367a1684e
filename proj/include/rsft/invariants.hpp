#ifndef RSFT_INVARIANTS_HPP
#define RSFT_INVARIANTS_HPP

#include "rsft/morphism.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rsft {

/// Incremental row-echelon basis over Q for sparse vectors keyed by `Key`,
/// remembering how each basis vector combines the columns added so far. The
/// pivot of a vector is its first nonzero key, so elimination is deterministic.
template <class Key>
class EchelonBasis {
public:
    using Vector = std::map<Key, Rational>;
    using Combination = std::map<std::size_t, Rational>;

    /// Adds the image of column `id`; returns the kernel relation (a
    /// combination of columns with zero image) when it depends on earlier ones.
    std::optional<Combination> add(std::size_t id, Vector v)
    {
        Combination c{{id, Rational(1)}};
        reduce(v, c, Rational(-1));
        if (v.empty()) return c;
        Rational lead = v.begin()->second;
        for (auto& [k, x] : v) x /= lead;
        for (auto& [k, x] : c) x /= lead;
        Key pivot = v.begin()->first;
        rows_.emplace(std::move(pivot), Row{std::move(v), std::move(c)});
        return std::nullopt;
    }

    /// A combination of columns whose image is `target`, if one exists.
    std::optional<Combination> solve(Vector target) const
    {
        Combination c;
        reduce(target, c, Rational(1));
        if (!target.empty()) return std::nullopt;
        return c;
    }

    std::size_t rank() const { return rows_.size(); }

    template <class Pred> std::size_t count_pivots(Pred pred) const
    {
        std::size_t n = 0;
        for (const auto& [k, row] : rows_) n += pred(k) ? 1 : 0;
        return n;
    }

private:
    struct Row {
        Vector v;
        Combination c;
    };

    static void axpy(std::map<std::size_t, Rational>& y, const Rational& a, const std::map<std::size_t, Rational>& x)
    {
        for (const auto& [k, v] : x) {
            Rational& t = y[k];
            t += a * v;
            if (t == 0) y.erase(k);
        }
    }

    /// Eliminates pivots from v; every row subtracted with factor a is recorded
    /// in c with factor sign * a.
    void reduce(Vector& v, Combination& c, const Rational& sign) const
    {
        auto it = v.begin();
        while (it != v.end()) {
            auto row = rows_.find(it->first);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            const Rational a = it->second;
            for (const auto& [k, x] : row->second.v) {
                Rational& t = v[k];
                t -= a * x;
                if (t == 0) v.erase(k);
            }
            axpy(c, sign * a, row->second.c);
            it = v.lower_bound(row->first);
        }
    }

    std::map<Key, Row> rows_;
};

/// Bounds of the finite searches. Word length, total q-letters and (for
/// Novikov Hamiltonians) the energy levels at which the search is repeated.
struct SearchBounds {
    std::size_t k_max = 4;
    std::size_t qlen_max = 6;
    std::vector<Rational> energy_levels;
};

/// Throws InvalidArgument unless all bounds are finite and positive.
void validate_bounds(const SearchBounds& b);

enum class SearchStatus { Found, Unknown };

struct SearchResult {
    SearchStatus status = SearchStatus::Unknown;
    long value = 0;
    std::optional<TensorWord> certificate;
    std::size_t k_searched = 0;
    EnergyCutoff level; ///< energy level for Novikov searches
    bool verified = false;
};

/// Basis words of S^{<=k} over q-monomials (the constant 1 allowed as a
/// factor) with at most qlen letters and the given shifted word degree.
/// letters_only keeps words whose factors are single q-generators.
std::vector<WordKey> bounded_words(const UniversePtr& u, std::optional<SideId> side, std::size_t k, std::size_t qlen,
                                   int degree, bool letters_only = false);

/// q-monomials (including 1) with at most qlen letters and the given degree.
std::vector<Monomial> bounded_monomials(const UniversePtr& u, std::optional<SideId> side, std::size_t qlen, int degree);

/// T(A,h): the least k-1 with 1l = D(x) for x in S^{<=k}, searched for
/// k = 1..k_max among words of at most qlen_max letters. A Novikov Hamiltonian
/// needs `level`: the equation is then solved modulo L^level. Throws
/// MasterEquationFails, NotOverline.
SearchResult torsion(const AlgElement& h, const SearchBounds& b, std::optional<SideId> side = {},
                     EnergyCutoff level = {});

/// The variant with pi(D x) = 1l. By default only words of single generators
/// are tried, which loses nothing since no other word has a scalar summand.
SearchResult torsion_tilde(const AlgElement& h, const SearchBounds& b, std::optional<SideId> side = {},
                           EnergyCutoff level = {}, bool letters_only = true);

/// torsion at every level of b.energy_levels.
std::vector<SearchResult> torsion_by_level(const AlgElement& h, const SearchBounds& b, std::optional<SideId> side = {});

/// O(A,h,g): least k with pi(D_g a) = 1l for a D_h-cycle a in S^{<=k}.
/// Throws NotHat, MasterEquationFails, BracketNotZero, InhomogeneousInput.
SearchResult order(const AlgElement& h, const AlgElement& g, const SearchBounds& b, std::optional<SideId> side = {});

/// pi(D_g(D_h b)) == 0 for every bounded word b of the relevant degree.
bool order_kills_boundaries(const AlgElement& h, const AlgElement& g, const SearchBounds& b,
                            std::optional<SideId> side = {});

/// ->D_{g-} e^f - e^f <-D_{g+} == (e^f (.) g) <-D+ - (-1)^{|g|} ->D-(g (.) e^f)
/// on all words of length <= max_length - (longest contraction) + 1, with e^f
/// cut at max_length. The homotopy g has degree |g+| + 1. Throws NotChainMap,
/// BracketNotZero, DegreeMismatch.
bool check_order_homotopy(const Potential& f, const AlgElement& g, const AlgElement& h_plus, const AlgElement& h_minus,
                          const AlgElement& g_plus, const AlgElement& g_minus, std::size_t max_length = 4);

struct OrderData {
    AlgElement g_plus;
    AlgElement g_minus;
    AlgElement g; ///< the homotopy in the mixed variables
};

struct MonotonicityReport {
    SearchResult torsion_plus;
    SearchResult torsion_minus;
    SearchResult tilde_plus;
    SearchResult tilde_minus;
    std::optional<TensorWord> transported;          ///< Phi(a) for the + certificate
    bool transported_verifies = false;              ///< D-(Phi(a)) == 1l
    bool torsion_monotone = true;                   ///< T+ >= T- wherever decided
    std::optional<SearchResult> order_plus;
    std::optional<SearchResult> order_minus;
    std::optional<TensorWord> order_transported;    ///< Phi(a) for the + order certificate
    std::vector<Scalar> proof_chain;                ///< the seven values of the order argument
    bool proof_chain_holds = false;
    bool order_monotone = true;
};

/// Runs both searches on each end and transports + certificates along Phi.
/// For the order part the homotopy identity is checked first.
MonotonicityReport monotonicity(const Potential& f, const AlgElement& h_plus, const AlgElement& h_minus,
                                const SearchBounds& b, const std::optional<OrderData>& order_data = {});

enum class ComplexKind { Algebra, Words };

struct HomologyBounds {
    int degree_lo = 0;
    int degree_hi = 0;
    std::size_t qlen_max = 4;
    std::size_t k_max = 1; ///< word length (Words only)
    EnergyCutoff level;    ///< Novikov Hamiltonians only
};

struct BettiNumber {
    int degree;
    std::size_t chains;
    std::size_t cycles;
    std::size_t boundaries;
    std::size_t betti;
};

struct HomologyReport {
    std::vector<BettiNumber> betti;
    /// The differential maps some window chain outside the letter bound.
    bool closed = true;
};

/// Homology of D^1 on the algebra or of D_h on words, degree by degree.
/// Cycles have at most qlen_max letters; boundaries come from chains with one
/// more letter, the most a single bracket with h^1 can remove.
HomologyReport homology_window(const AlgElement& h, ComplexKind kind, const HomologyBounds& b,
                               std::optional<SideId> side = {});

} // namespace rsft

#endif
