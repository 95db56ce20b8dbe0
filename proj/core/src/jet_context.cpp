#include "tophier/jet_context.hpp"

#include "tophier/diff_poly.hpp"

namespace tophier {

namespace {

std::set<std::int32_t> jets_of(const PolyData& d, const std::vector<JetContext::ExpAtom>& exps) {
    std::set<std::int32_t> out;
    for (const auto& [m, c] : d.num) {
        (void)c;
        for (const auto& [id, e] : m.f) {
            (void)e;
            if (Monomial::is_jet(id)) {
                out.insert(id);
            } else if (Monomial::is_exp(id)) {
                const auto& closure = exps[id - Monomial::kExpBase].jet_closure;
                out.insert(closure.begin(), closure.end());
            }
        }
    }
    return out;
}

}  // namespace

std::shared_ptr<JetContext> JetContext::create(std::vector<std::string> comp_labels) {
    if (comp_labels.empty() || comp_labels.size() > 255)
        raise(ErrorKind::Precondition, "JetContext: need 1..255 components");
    auto ctx = std::shared_ptr<JetContext>(new JetContext());
    ctx->comp_labels_ = std::move(comp_labels);
    for (int a = 0; a < ctx->ncomp(); ++a)
        for (int b = a + 1; b < ctx->ncomp(); ++b)
            if (ctx->comp_labels_[a] == ctx->comp_labels_[b])
                raise(ErrorKind::Precondition, "JetContext: duplicate component label");
    return ctx;
}

int JetContext::comp_index(const std::string& label) const {
    for (int a = 0; a < ncomp(); ++a)
        if (comp_labels_[a] == label) return a;
    return -1;
}

int JetContext::exp_atom_index(const std::string& label) const {
    for (int i = 0; i < n_exp_atoms(); ++i)
        if (exp_atoms_[i].label == label) return i;
    return -1;
}

int JetContext::den_atom_index(const std::string& label) const {
    for (int i = 0; i < n_den_atoms(); ++i)
        if (den_atoms_[i].label == label) return i;
    return -1;
}

int JetContext::declare_exp_atom(const std::string& label, const DiffPoly& argument) {
    if (exp_atom_index(label) >= 0)
        raise(ErrorKind::Precondition, "exp atom '" + label + "' already declared");
    if (argument.has_denominators() || argument.has_log_atoms())
        raise(ErrorKind::Precondition, "exp atom argument must be a jet polynomial");
    auto gr = argument.grade();
    if (!gr.homogeneous || gr.grade != 0)
        raise(ErrorKind::Precondition, "exp atom argument must have jet grade 0");
    ExpAtom atom;
    atom.label = label;
    atom.arg = argument.data();
    atom.dx_arg = argument.dx().data();
    atom.jet_closure = jets_of(atom.arg, exp_atoms_);
    exp_atoms_.push_back(std::move(atom));
    return n_exp_atoms() - 1;
}

int JetContext::declare_den_atom(const std::string& label, const DiffPoly& poly) {
    if (den_atom_index(label) >= 0)
        raise(ErrorKind::Precondition, "denominator atom '" + label + "' already declared");
    if (poly.is_zero())
        raise(ErrorKind::Precondition, "denominator atom must be nonzero");
    if (poly.has_denominators() || poly.has_log_atoms())
        raise(ErrorKind::Precondition, "denominator atom must be a jet polynomial");
    auto gr = poly.grade();
    if (!gr.homogeneous)
        raise(ErrorKind::Precondition, "denominator atom must be grade-homogeneous");
    DenAtom atom;
    atom.label = label;
    atom.poly = poly.data();
    atom.dx_poly = poly.dx().data();
    atom.grade = gr.grade;
    atom.is_monomial = poly.data().num.size() == 1;
    atom.jet_closure = jets_of(atom.poly, exp_atoms_);
    den_atoms_.push_back(std::move(atom));
    return n_den_atoms() - 1;
}

int JetContext::declare_log_atom(const std::string& den_label) {
    int i = den_atom_index(den_label);
    if (i < 0)
        raise(ErrorKind::Precondition, "log atom needs a declared denominator atom '" + den_label + "'");
    if (den_atoms_[i].has_log)
        raise(ErrorKind::Precondition, "log atom for '" + den_label + "' already declared");
    den_atoms_[i].has_log = true;
    return i;
}

bool JetContext::compatible_with(const JetContext& other) const {
    if (ncomp() != other.ncomp()) return false;
    if (n_exp_atoms() != other.n_exp_atoms() || n_den_atoms() != other.n_den_atoms())
        return false;
    for (int i = 0; i < n_exp_atoms(); ++i)
        if (!(exp_atoms_[i].arg == other.exp_atoms_[i].arg)) return false;
    for (int i = 0; i < n_den_atoms(); ++i)
        if (!(den_atoms_[i].poly == other.den_atoms_[i].poly)) return false;
    return true;
}

}  // namespace tophier
