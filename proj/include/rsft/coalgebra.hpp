#ifndef RSFT_COALGEBRA_HPP
#define RSFT_COALGEBRA_HPP

#include "rsft/element.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rsft {

/// Basis word of the symmetric coalgebra: a t-monomial pulled to the front and
/// a canonically sorted list of monomial factors. The empty factor list is the
/// counit-unit of S^0; the single constant factor is the word 1l in S^1.
struct WordKey {
    Monomial t_part;
    std::vector<Monomial> factors;

    friend auto operator<=>(const WordKey&, const WordKey&) = default;
    friend bool operator==(const WordKey&, const WordKey&) = default;
};

/// Normal form of T * (f_1 (.) ... (.) f_n) with its Koszul sign; empty when
/// the word vanishes (repeated odd factor or odd t-square).
struct SignedWord {
    int sign;
    WordKey key;
};
std::optional<SignedWord> normalize_word(const Universe& u, const Monomial& t_part, const std::vector<Monomial>& factors);

/// Shifted degree sum_i (|f_i| - 2N) + |T| of a basis word.
int word_degree(const Universe& u, const WordKey& w);
int word_parity(const Universe& u, const WordKey& w);

/// Finite sum of basis words with Novikov coefficients, optionally truncated in
/// word length and energy.
class TensorWord {
public:
    using TermMap = std::map<WordKey, Scalar>;

    explicit TensorWord(UniversePtr u, EnergyCutoff energy = {}, std::optional<std::size_t> max_length = {});

    /// The empty word (unit of the symmetric algebra, "1" in e^f).
    static TensorWord unit(UniversePtr u, EnergyCutoff energy = {}, std::optional<std::size_t> max_length = {});
    /// The length-one word 1l.
    static TensorWord one_l(UniversePtr u, EnergyCutoff energy = {}, std::optional<std::size_t> max_length = {});
    /// w_1 (.) ... (.) w_n expanded multilinearly.
    static TensorWord word(const std::vector<AlgElement>& factors, std::optional<std::size_t> max_length = {});
    static TensorWord word(const AlgElement& w, std::optional<std::size_t> max_length = {})
    {
        return word(std::vector<AlgElement>{w}, max_length);
    }
    /// e^f = sum_k f^{(.)k} / k!, up to the given word length. The word-length
    /// cutoff is reported as truncation unless the caller knows longer words
    /// cannot contribute (flag_length_cutoff = false).
    static TensorWord exp(const AlgElement& f, std::size_t max_length, bool flag_length_cutoff = true);
    /// f^{(.)n} / n!.
    static TensorWord divided_power(const AlgElement& f, std::size_t n);

    const UniversePtr& universe_ptr() const { return u_; }
    const Universe& universe() const { return *u_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const EnergyCutoff& energy() const { return energy_; }
    const std::optional<std::size_t>& max_length() const { return max_length_; }
    bool truncation_active() const { return truncated_; }
    void mark_truncated(bool on = true) { truncated_ = truncated_ || on; }

    TensorWord with_limits(EnergyCutoff energy, std::optional<std::size_t> max_length) const;

    /// Adds c * T * (f_1 (.) ... (.) f_n), normalizing order and signs.
    void add(const Monomial& t_part, const std::vector<Monomial>& factors, const Scalar& c);
    void add_normalized(const WordKey& key, const Scalar& c);

    TensorWord operator-() const;
    TensorWord& operator+=(const TensorWord& other);
    TensorWord& operator-=(const TensorWord& other);
    friend TensorWord operator+(TensorWord a, const TensorWord& b) { return a += b; }
    friend TensorWord operator-(TensorWord a, const TensorWord& b) { return a -= b; }
    TensorWord scaled(const Scalar& c) const;
    TensorWord scaled(long c) const { return scaled(Scalar(c)); }
    TensorWord scaled(int c) const { return scaled(Scalar(static_cast<long>(c))); }
    TensorWord scaled(const Rational& c) const { return scaled(Scalar(c)); }
    friend bool operator==(const TensorWord& a, const TensorWord& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TensorWord& a, const TensorWord& b) { return !(a == b); }

    /// Symmetric product (.) of two words.
    friend TensorWord odot(const TensorWord& a, const TensorWord& b);

    TensorWord length_part(std::size_t n) const;
    TensorWord length_at_most(std::size_t n) const;
    TensorWord filter(const std::function<bool(const WordKey&)>& keep) const;
    std::size_t max_word_length() const;
    std::optional<int> degree() const;
    /// Coefficient of the t-monomial T (T pulled out to the left).
    TensorWord t_coefficient(const Monomial& t_mono) const;
    /// Apply an algebra map factor-wise is not meaningful in general; this sets
    /// all p-variables of a side to zero in every factor.
    TensorWord restrict_p_zero(std::optional<SideId> side = {}) const;
    /// The length-one part read as an element of the algebra.
    AlgElement length_one_element() const;
    /// Coefficient of the empty word.
    Scalar unit_coefficient() const;
    /// Coefficient of 1l.
    Scalar one_l_coefficient() const;

    TensorWord rename_sides(const std::map<SideId, SideId>& mapping) const;

    std::string str() const;

private:
    UniversePtr u_;
    EnergyCutoff energy_;
    std::optional<std::size_t> max_length_;
    TermMap terms_;
    bool truncated_ = false;
};

/// A multilinear operation on word factors, applied to factors in the order given.
using FactorOperator = std::function<AlgElement(const std::vector<AlgElement>&)>;

enum class Placement { Left, Right };

/// Coderivation extension of an operator defined on S^r for the arities in
/// `arities`. Left placement: sum eps(I,J) op(x_I) (.) x_J with a Koszul sign
/// (-1)^{parity |T|} for passing the t-part. Right placement: sum eps(J,I)
/// x_J (.) op(x_I).
TensorWord extend_coderivation(const TensorWord& x, const std::vector<std::size_t>& arities, const FactorOperator& op,
                               int parity, Placement placement);

/// ->h^r(w_1 (.) ... (.) w_r) = {...{h^r, w_1}, ...}, w_r} with h^r the part of
/// p-degree r (p-letters of `side` only, if given).
AlgElement arrow_apply(const AlgElement& h, std::size_t r, const std::vector<AlgElement>& ws,
                       std::optional<SideId> side = {});

/// (c_1 (.) ... (.) c_s)<-g_s = {c_1, {..., {c_s, g_s}}} with g_s the part of
/// q-degree s (q-letters of `side` only, if given).
AlgElement arrow_apply_right(const AlgElement& g, std::size_t s, const std::vector<AlgElement>& cs,
                             std::optional<SideId> side = {});

/// The coderivation D_h, including the arity-zero inclusion of h|_{p=0} when present.
TensorWord coderivation(const AlgElement& h, const TensorWord& x, std::optional<SideId> side = {});
/// The right coderivation x<-D_g, including the arity-zero inclusion of g|_{q=0}.
TensorWord right_coderivation(const TensorWord& x, const AlgElement& g, std::optional<SideId> side = {});

/// {h,h} = 0 up to truncation. Throws DegreeMismatch unless h has degree 2N-1.
bool check_master(const AlgElement& h);

/// D_h D_g - (-1)^{|h||g|} D_g D_h = D_{h,g} on every sample.
bool check_commutator_lemma(const AlgElement& h, const AlgElement& g, const std::vector<TensorWord>& samples);

/// D^1(x) = {h^1, x}. Throws MasterEquationFails unless {h,h} = 0.
AlgElement contact_differential(const AlgElement& h, const AlgElement& x);

/// Reduced unshuffle coproduct; pairs (left, right) with both sides nonempty.
using TensorSquare = std::map<std::pair<WordKey, WordKey>, Scalar>;
TensorSquare coproduct(const TensorWord& x);
/// (A (x) id + id (x) A) applied to a tensor square, for a map A of parity `parity`.
TensorSquare apply_on_tensor_square(const UniversePtr& u, const TensorSquare& x,
                                    const std::function<TensorWord(const TensorWord&)>& a, int parity);

/// Koszul sign of moving the factors listed in `first` in front of the rest.
int unshuffle_sign(const Universe& u, const std::vector<Monomial>& factors, const std::vector<std::size_t>& first);

} // namespace rsft

#endif
