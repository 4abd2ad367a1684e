#ifndef RSFT_MCTWIST_HPP
#define RSFT_MCTWIST_HPP

#include "rsft/morphism.hpp"

namespace rsft {

/// Word length beyond which e^a vanishes modulo L^E: words of length m have
/// filtration level at least m * level(a).
std::size_t exp_length(const AlgElement& a, const EnergyCutoff& energy);

/// e^a truncated modulo L^E (the empty word included).
TensorWord exp_filtered(const AlgElement& a, const EnergyCutoff& energy);

/// D_h(e^a) = 0 modulo L^E. Throws DegreeMismatch unless |a| = 2N, ZeroFiltration
/// unless a has positive filtration level (a = 0 passes only with allow_zero),
/// MasterEquationFails unless {h,h} = 0.
bool is_maurer_cartan(const AlgElement& a, const AlgElement& h, const EnergyCutoff& energy, bool allow_zero = false,
                      std::optional<SideId> side = {});

/// e^{a+b} = e^a (.) e^b modulo L^E.
bool exponential_product_check(const AlgElement& a, const AlgElement& b, const EnergyCutoff& energy);

/// Psi^a(x) = e^a (.) x modulo L^E.
TensorWord psi(const AlgElement& a, const TensorWord& x, const EnergyCutoff& energy);

/// D^a(x) = Psi^{-a} D_h Psi^a (x). Throws NotMaurerCartan.
TensorWord twist_coderivation(const AlgElement& h, const AlgElement& a, const TensorWord& x,
                              const EnergyCutoff& energy, bool allow_zero = false, std::optional<SideId> side = {});

/// h^a = h + {h,a} + 1/2 {{h,a},a} + ... modulo L^E. Throws NotMaurerCartan.
AlgElement twist_hamiltonian(const AlgElement& h, const AlgElement& a, const EnergyCutoff& energy,
                             bool allow_zero = false, std::optional<SideId> side = {});

/// f = f0 + f' with f0 = f|_{p_source = 0} (an element of the target algebra)
/// and f' in the overline. Throws ZeroFiltration when f0 != 0 has level 0.
struct SplitPotential {
    AlgElement zero_part;
    Potential overline_part;
};
SplitPotential split_potential(const Potential& f);

/// f_*(a) = sum_r 1/r! phi^r(a^{(.)r}) modulo L^E. Checks that a is
/// Maurer-Cartan for h^+ and that f is a chain map from h^+ to h^-.
AlgElement pushforward_mc(const Potential& f, const AlgElement& a, const AlgElement& h_plus, const AlgElement& h_minus,
                          const EnergyCutoff& energy);

/// The potential g with (e^f)<-D_{e^a} = e^g, modulo L^E.
AlgElement twisted_generating_potential(const Potential& f, const AlgElement& a, const EnergyCutoff& energy);

/// Phi^a = Psi^{-f_*(a)} Phi Psi^a, given by the potential f^a = g - g|_{p=0}.
/// Throws NotChainMap if g|_{p=0} differs from f_*(a).
struct TwistedMorphism {
    Potential potential;
    AlgElement pushforward;
};
TwistedMorphism twisted_morphism(const Potential& f, const AlgElement& a, const AlgElement& h_plus,
                                 const AlgElement& h_minus, const EnergyCutoff& energy);

} // namespace rsft

#endif
