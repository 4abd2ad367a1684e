#include "rsft/universe.hpp"

#include "rsft/error.hpp"

#include <set>

namespace rsft {

GeneratorTable::GeneratorTable(std::vector<Generator> gens)
{
    for (auto& g : gens) add(std::move(g));
}

void GeneratorTable::add(Generator g)
{
    if (g.name.empty()) throw Error(ErrorCode::InvalidArgument, "empty generator name");
    if (find(g.name)) throw Error(ErrorCode::InvalidArgument, "duplicate generator '" + g.name + "'");
    if (g.kappa < 1) throw Error(ErrorCode::InvalidArgument, "weight of '" + g.name + "' must be a positive integer");
    if (g.action && *g.action < 0) throw Error(ErrorCode::InvalidArgument, "negative action for '" + g.name + "'");
    gens_.push_back(std::move(g));
}

std::optional<std::size_t> GeneratorTable::find(std::string_view name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].name == name) return i;
    }
    return std::nullopt;
}

bool operator==(const GeneratorTable& a, const GeneratorTable& b)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i];
        const auto& y = b[i];
        if (x.name != y.name || x.qdeg != y.qdeg || x.kappa != y.kappa) return false;
    }
    return true;
}

Universe::Universe(int N, std::vector<Side> sides, std::vector<TVariable> tvars)
    : n_(N), sides_(std::move(sides)), tvars_(std::move(tvars))
{
    if (sides_.empty()) sides_.push_back({"", GeneratorTable{}});
    std::set<std::string> suffixes;
    for (const auto& s : sides_) {
        if (!suffixes.insert(s.suffix).second) throw Error(ErrorCode::InvalidArgument, "duplicate side suffix");
    }
    std::set<std::string> tnames;
    for (const auto& t : tvars_) {
        if (t.name.empty() || !tnames.insert(t.name).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate or empty t-variable name '" + t.name + "'");
        }
    }
    for (const auto& s : sides_) {
        offsets_.push_back(gen_total_);
        gen_total_ += static_cast<VarId>(s.table.size());
    }
    infos_.resize(2 * gen_total_ + tvars_.size());
    for (SideId s = 0; s < sides_.size(); ++s) {
        const auto& table = sides_[s].table;
        for (std::size_t g = 0; g < table.size(); ++g) {
            infos_[q(s, g)] = {VarKind::Q, s, static_cast<std::uint32_t>(g), table[g].qdeg, table[g].kappa};
            infos_[p(s, g)] = {VarKind::P, s, static_cast<std::uint32_t>(g), 2 * N - table[g].qdeg, table[g].kappa};
        }
    }
    for (std::size_t i = 0; i < tvars_.size(); ++i) {
        infos_[t(i)] = {VarKind::T, kNoSide, static_cast<std::uint32_t>(i), tvars_[i].degree, 1};
    }
}

std::shared_ptr<const Universe> Universe::single(int N, GeneratorTable table, std::vector<TVariable> tvars)
{
    return std::make_shared<const Universe>(N, std::vector<Side>{{"", std::move(table)}}, std::move(tvars));
}

std::shared_ptr<const Universe> Universe::cobordism(int N, GeneratorTable none, GeneratorTable plus,
                                                    GeneratorTable minus, std::vector<TVariable> tvars)
{
    return std::make_shared<const Universe>(
        N, std::vector<Side>{{"", std::move(none)}, {"+", std::move(plus)}, {"-", std::move(minus)}},
        std::move(tvars));
}

std::optional<SideId> Universe::side_by_suffix(std::string_view suffix) const
{
    for (std::size_t s = 0; s < sides_.size(); ++s) {
        if (sides_[s].suffix == suffix) return static_cast<SideId>(s);
    }
    return std::nullopt;
}

std::optional<std::size_t> Universe::find_tvar(std::string_view name) const
{
    for (std::size_t i = 0; i < tvars_.size(); ++i) {
        if (tvars_[i].name == name) return i;
    }
    return std::nullopt;
}

VarId Universe::var(VarKind kind, SideId s, std::string_view name) const
{
    if (kind == VarKind::T) {
        auto i = find_tvar(name);
        if (!i) throw Error(ErrorCode::UnknownGenerator, "unknown t-variable '" + std::string(name) + "'");
        return t(*i);
    }
    if (s >= sides_.size()) throw Error(ErrorCode::UnknownGenerator, "unknown side");
    auto g = sides_[s].table.find(name);
    if (!g) {
        throw Error(ErrorCode::UnknownGenerator,
                    "unknown generator '" + std::string(name) + sides_[s].suffix + "'");
    }
    return kind == VarKind::Q ? q(s, *g) : p(s, *g);
}

VarId Universe::partner(VarId v) const
{
    if (is_q(v)) return v + gen_total_;
    if (is_p(v)) return v - gen_total_;
    throw Error(ErrorCode::InvalidArgument, "t-variables have no conjugate");
}

std::string Universe::var_name(VarId v) const
{
    const auto& inf = infos_[v];
    switch (inf.kind) {
    case VarKind::T: return "t:" + tvars_[inf.index].name;
    case VarKind::Q: return "q:" + sides_[inf.side].table[inf.index].name + sides_[inf.side].suffix;
    case VarKind::P: return "p:" + sides_[inf.side].table[inf.index].name + sides_[inf.side].suffix;
    }
    return {};
}

} // namespace rsft
