#ifndef RSFT_UNIVERSE_HPP
#define RSFT_UNIVERSE_HPP

#include "rsft/scalar.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsft {

using VarId = std::uint32_t;
using SideId = std::uint8_t;

/// Sides 0, 1, 2 are the unmarked, positive (+) and negative (-) ends.
inline constexpr SideId kNoSide = 0;
inline constexpr SideId kPlus = 1;
inline constexpr SideId kMinus = 2;

enum class VarKind : std::uint8_t { Q = 0, P = 1, T = 2 };

struct Generator {
    std::string name;
    int qdeg = 0;
    long kappa = 1;
    std::optional<Rational> action;
};

/// Index set of one end: names, q-degrees, weights and optional actions.
class GeneratorTable {
public:
    GeneratorTable() = default;
    explicit GeneratorTable(std::vector<Generator> gens);

    void add(Generator g);
    std::optional<std::size_t> find(std::string_view name) const;
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& operator[](std::size_t i) const { return gens_[i]; }
    std::size_t size() const { return gens_.size(); }
    bool empty() const { return gens_.empty(); }

    friend bool operator==(const GeneratorTable& a, const GeneratorTable& b);

private:
    std::vector<Generator> gens_;
};

struct TVariable {
    std::string name;
    int degree = 0;
};

struct VarInfo {
    VarKind kind;
    SideId side;
    std::uint32_t index; // generator index within the side table, or t-variable index
    int degree;
    long kappa;
};

/// The variable universe shared by all elements of one computation: the global
/// shift N, one generator table per end and the constraint variables.
///
/// Variable ids realise the canonical order: every q before every p before
/// every t; within a kind by side, then by table position.
class Universe {
public:
    struct Side {
        std::string suffix;
        GeneratorTable table;
    };

    Universe(int N, std::vector<Side> sides, std::vector<TVariable> tvars = {});

    /// Single unmarked end.
    static std::shared_ptr<const Universe> single(int N, GeneratorTable table, std::vector<TVariable> tvars = {});
    /// Ends "", "+", "-" with the given tables.
    static std::shared_ptr<const Universe> cobordism(int N, GeneratorTable none, GeneratorTable plus,
                                                     GeneratorTable minus, std::vector<TVariable> tvars = {});

    int N() const { return n_; }
    std::size_t side_count() const { return sides_.size(); }
    const Side& side(SideId s) const { return sides_.at(s); }
    const GeneratorTable& table(SideId s) const { return sides_.at(s).table; }
    std::optional<SideId> side_by_suffix(std::string_view suffix) const;
    const std::vector<TVariable>& tvars() const { return tvars_; }
    std::optional<std::size_t> find_tvar(std::string_view name) const;

    VarId q(SideId s, std::size_t gen) const { return offsets_[s] + static_cast<VarId>(gen); }
    VarId p(SideId s, std::size_t gen) const { return gen_total_ + offsets_[s] + static_cast<VarId>(gen); }
    VarId t(std::size_t i) const { return 2 * gen_total_ + static_cast<VarId>(i); }
    /// q or p by generator name; throws UnknownGenerator.
    VarId var(VarKind kind, SideId s, std::string_view name) const;

    std::size_t var_count() const { return infos_.size(); }
    const VarInfo& info(VarId v) const { return infos_[v]; }
    int degree(VarId v) const { return infos_[v].degree; }
    bool odd(VarId v) const { return (infos_[v].degree & 1) != 0; }
    bool is_q(VarId v) const { return v < gen_total_; }
    bool is_p(VarId v) const { return v >= gen_total_ && v < 2 * gen_total_; }
    bool is_t(VarId v) const { return v >= 2 * gen_total_; }
    /// The conjugate variable (q <-> p) of the same generator.
    VarId partner(VarId v) const;

    /// Textual name in the element grammar, e.g. "q:x", "p:y+", "t:t1".
    std::string var_name(VarId v) const;

    /// True when both sides carry identical tables (so identity morphisms exist).
    bool same_table(SideId a, SideId b) const { return table(a) == table(b); }

private:
    int n_;
    std::vector<Side> sides_;
    std::vector<TVariable> tvars_;
    std::vector<VarId> offsets_;
    VarId gen_total_ = 0;
    std::vector<VarInfo> infos_;
};

using UniversePtr = std::shared_ptr<const Universe>;

} // namespace rsft

#endif
