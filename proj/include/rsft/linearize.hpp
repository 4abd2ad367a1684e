#ifndef RSFT_LINEARIZE_HPP
#define RSFT_LINEARIZE_HPP

#include "rsft/mctwist.hpp"

namespace rsft {

/// h|_{p=0} = 0 = h|_{q=0}.
bool check_hat(const AlgElement& h, std::optional<SideId> side = {});

/// h^r_s: the part of h of degree r in p and s in q.
AlgElement hat_component(const AlgElement& h, int r, int s, std::optional<SideId> side = {});

/// m^r_s(q_1 (.) ... (.) q_r) = {...{h^r_s, q_1}, ...}, q_r}. Throws NotHat.
AlgElement m_operation(const AlgElement& h, int r, int s, const std::vector<AlgElement>& qs,
                       std::optional<SideId> side = {});

/// Reads every factor of a word as the word of its q-letters.
TensorWord flatten_word(const TensorWord& x);

/// Words whose factors are single letters of one generator.
bool is_letter_word(const TensorWord& x);

/// sum_{r1+r2=r, s1+s2=s} m^{r1}_{s1} o_1 m^{r2}_{s2} applied to a letter word.
TensorWord composite_relation(const AlgElement& h, int r, int s, const TensorWord& letters,
                              std::optional<SideId> side = {});

struct BiLieComponent {
    int r;
    int s;
    bool bracket_form;   ///< sum of {h^{r1}_{s1}, h^{r2}_{s2}} vanishes
    bool composite_form; ///< the o_1 form vanishes on all generator words tried
    bool forms_agree;    ///< bracket_form == composite_form
};

struct BiLieReport {
    bool ok;
    std::vector<BiLieComponent> components;
};

/// Checks the quadratic relations for 2 <= r <= r_max, 2 <= s <= s_max in both
/// forms; the composite form is evaluated on all words of up to `max_inputs`
/// generator letters. Throws NotHat.
BiLieReport check_bilie_relations(const AlgElement& h, int r_max, int s_max, std::size_t max_inputs = 4,
                                  std::optional<SideId> side = {});

/// The part of an element linear in the q-variables of `side`.
AlgElement linear_part(const AlgElement& x, std::optional<SideId> side = {});

/// A pure p power series f with f|_{p=0} = 0 and h|_{L_f} = 0.
class Augmentation {
public:
    Augmentation(AlgElement h, AlgElement f, SideId side);

    const AlgElement& element() const { return f_; }
    SideId side() const { return side_; }

private:
    AlgElement f_;
    SideId side_;
};

/// h|_{L_f}: q -> kappa f d^R/dp, p unchanged.
AlgElement restrict_to_augmentation(const AlgElement& h, const AlgElement& f, SideId side);

/// h_f = h|_{L_{i+f}}, computed on one end as q -> q + kappa f d^R/dp.
AlgElement augmentation_twist(const AlgElement& h, const Augmentation& f);

/// The same element as the series ->e^f h = sum_n 1/n! {f,{f,...,{f,h}}}.
AlgElement augmentation_twist_series(const AlgElement& h, const Augmentation& f);

/// Phi^lin on letter words, given by the part of f linear in the target q's.
class LinearizedMorphism {
public:
    LinearizedMorphism(const Potential& f, const AlgElement& h_plus, const AlgElement& h_minus);

    const Potential& linear_potential() const { return f1_; }
    TensorWord apply(const TensorWord& letters) const;

private:
    Potential f1_;
};

/// D^lin(x) = D_{h_1}(x) on letter words. Throws NotHat.
TensorWord linearized_coderivation(const AlgElement& h, const TensorWord& letters, std::optional<SideId> side = {});

/// ((i+f)_* a)_1 for the augmentation f on `source`, computed through the
/// identity cobordism to `target` (both ends must carry the same table) and
/// renamed back onto `source`.
AlgElement augmented_mc_linear_part(const AlgElement& h, const Augmentation& f, const AlgElement& a, SideId target,
                                    const EnergyCutoff& energy);

} // namespace rsft

#endif
