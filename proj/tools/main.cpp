// tophier command-line driver: every computation behind deterministic text
// or JSON output with meaningful exit codes.
//   0 success / verification passed
//   2 usage or input validation error
//   3 verification failure
//   4 solver failure

#include <chrono>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tophier/delta_bracket.hpp"
#include "tophier/gwzero.hpp"
#include "tophier/loop_solver.hpp"
#include "tophier/p1sector.hpp"
#include "tophier/psdo.hpp"
#include "tophier/quasitriv.hpp"
#include "tophier/wktau.hpp"

using namespace tophier;
using Json = nlohmann::ordered_json;

namespace {

struct Report {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    Json verdicts = Json::object();
    double seconds = 0.0;
    int exit_code = 0;

    void print(bool as_json) const {
        if (as_json) {
            Json j;
            j["schema"] = 1;
            j["command"] = command;
            j["inputs"] = inputs;
            j["results"] = results;
            j["verdicts"] = verdicts;
            std::cout << j.dump(2) << "\n";
            return;
        }
        std::cout << "command: " << command << "\n";
        for (auto& [k, v] : inputs.items())
            std::cout << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump())
                      << "\n";
        for (auto& [k, v] : results.items()) {
            if (v.is_array()) {
                std::cout << k << ":\n";
                for (auto& line : v) std::cout << "  " << line.get<std::string>() << "\n";
            } else {
                std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                          << "\n";
            }
        }
        for (auto& [k, v] : verdicts.items())
            std::cout << "verdict " << k << ": " << (v.get<bool>() ? "pass" : "fail") << "\n";
        std::cout << "elapsed: " << seconds << " s\n";
    }
};

JetContextPtr kdv_vctx() {
    auto ctx = JetContext::create({"v"});
    ctx->declare_den_atom("vx", DiffPoly::jet(ctx, 0, 1));
    ctx->declare_log_atom("vx");
    return ctx;
}

JetContextPtr kdv_uctx() {
    auto ctx = JetContext::create({"u"});
    ctx->declare_den_atom("ux", DiffPoly::jet(ctx, 0, 1));
    ctx->declare_log_atom("ux");
    return ctx;
}

DiffPoly disp_flow(const JetContextPtr& ctx, int i) {
    return DiffPoly::jet(ctx, 0, 0).pow(i) * rat_factorial_inv(i) * DiffPoly::jet(ctx, 0, 1);
}

EpsSeries kdv_delta_f(const JetContextPtr& ctx, int E) {
    DiffPoly F1 = solve_genus(ctx, 1, {});
    EpsSeries df = EpsSeries::lift(F1, E);
    if (E >= 2) df += EpsSeries::monomial(solve_genus(ctx, 2, {F1}), 2, E);
    return df;
}

std::vector<int> parse_spec(const std::string& spec) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tophier: exact symbolic engine for integrable hierarchies of topological type"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit structured JSON output");

    // ------------------------------------------------------------------ kdv
    auto kdv = app.add_subcommand("kdv", "KdV hierarchy: Lax side, loop equation, transforms");
    kdv->require_subcommand(1);

    int flow_i = 1, eps_e = 2, genus_g = 2, dens_i = 0;

    auto kdv_lax = kdv->add_subcommand("lax", "flow right-hand side from the Lax pair");
    kdv_lax->add_option("--flow", flow_i, "flow index i >= 0")->required();
    kdv_lax->add_option("--eps", eps_e, "truncation order (even)")->required();

    auto kdv_loop = kdv->add_subcommand("loop", "solve the loop equation for F_g");
    kdv_loop->add_option("--genus", genus_g, "target genus >= 1")->required();

    auto kdv_quasi = kdv->add_subcommand("quasitriv", "quasitriviality transform vs the Lax side");
    kdv_quasi->add_option("--flow", flow_i, "flow index i >= 0")->required();
    kdv_quasi->add_option("--eps", eps_e, "truncation order (even)")->required();

    auto kdv_bracket = kdv->add_subcommand("bracket", "transformed Poisson pencil");
    kdv_bracket->add_option("--eps", eps_e, "truncation order (even)")->required();

    auto kdv_dens = kdv->add_subcommand("densities", "tau-symmetric Hamiltonian densities");
    kdv_dens->add_option("--index", dens_i, "density index i >= -1")->required();
    kdv_dens->add_option("--eps", eps_e, "truncation order (even)")->required();

    // ------------------------------------------------------------------- wk
    auto wk = app.add_subcommand("wk", "Witten-Kontsevich sector (X = pt)");
    wk->require_subcommand(1);
    int deg_d = 4, mmax = 2, wk_genus = 0, lambda_which = 0;
    std::string spec_str;

    auto wk_vtop_cmd = wk->add_subcommand("vtop", "topological solution series");
    wk_vtop_cmd->add_option("--deg", deg_d, "total degree cap")->required();
    auto wk_f0_cmd = wk->add_subcommand("f0", "genus-0 potential");
    wk_f0_cmd->add_option("--deg", deg_d, "total degree cap")->required();
    auto wk_f1_cmd = wk->add_subcommand("f1", "genus-1 potential");
    wk_f1_cmd->add_option("--deg", deg_d, "total degree cap")->required();

    auto wk_int = wk->add_subcommand("intersect", "intersection numbers from the series");
    wk_int->add_option("--genus", wk_genus, "0, 1 or 2")->required();
    wk_int->add_option("--spec", spec_str, "comma-separated psi powers k1,k2,...")->required();
    wk_int->add_option("--lambda", lambda_which, "Hodge class insertion (genus 2): 1 or 2");

    auto wk_vir = wk->add_subcommand("virasoro", "Virasoro constraints on the tau truncation");
    wk_vir->add_option("--m-max", mmax, "highest operator index (<= 2)")->required();
    wk_vir->add_option("--deg", deg_d, "t-degree cap")->required();
    wk_vir->add_option("--eps", eps_e, "eps window cap (<= 2)")->required();

    // ------------------------------------------------------------------ gw0
    auto gw0 = app.add_subcommand("gw0", "degree-zero Gromov-Witten sector");
    gw0->require_subcommand(1);
    std::string variety = "pn:4";
    int alpha_a = 1, pp = 1;
    bool override_gate = false;

    auto gw0_flow = gw0->add_subcommand("flow", "transformed flow with certificate");
    gw0_flow->add_option("--variety", variety, "pn:<d>, k3, or a variety file")->required();
    gw0_flow->add_option("--alpha", alpha_a, "basis index 1..n")->required();
    gw0_flow->add_option("--p", pp, "flow level p >= 0")->required();
    gw0_flow->add_flag("--override-dim-gate", override_gate, "allow d < 4 experiments");

    auto gw0_br = gw0->add_subcommand("brackets", "bihamiltonian pair before/after substitution");
    gw0_br->add_option("--variety", variety)->required();
    gw0_br->add_flag("--override-dim-gate", override_gate);

    auto gw0_chern = gw0->add_subcommand("chern", "Chern number constraint");
    gw0_chern->add_option("--variety", variety)->required();

    auto gw0_g1 = gw0->add_subcommand("genus1", "genus-one degree-zero potential");
    gw0_g1->add_option("--variety", variety)->required();

    // ------------------------------------------------------------------- p1
    auto p1 = app.add_subcommand("p1", "the P^1 Frobenius sector");
    p1->require_subcommand(1);
    int pmax = 3;
    std::string probe_flow = "s0";

    auto p1_theta = p1->add_subcommand("theta", "deformed flat coordinate coefficients");
    p1_theta->add_option("--p-max", pmax, "highest level")->required();
    auto p1_g1 = p1->add_subcommand("genus1", "genus-one loop-equation solve");
    auto p1_lam = p1->add_subcommand("lambda", "genus-2 Hodge-integral consistency");
    p1_lam->add_option("--deg", deg_d, "degree cap")->required();
    auto p1_probe = p1->add_subcommand("poly-probe", "polynomiality of the transformed flow");
    p1_probe->add_option("--flow", probe_flow, "flow name (s0)");

    // let --json appear anywhere on the line
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        a->fallthrough();
        for (auto* sub : a->get_subcommands({})) enable_fallthrough(sub);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Report rep;
    auto started = std::chrono::steady_clock::now();
    try {
        if (kdv_lax->parsed()) {
            rep.command = "kdv lax";
            rep.inputs["flow"] = flow_i;
            rep.inputs["eps"] = eps_e;
            auto ctx = kdv_uctx();
            rep.results["u_t"] = kdv_rhs(ctx, flow_i, eps_e).str();
        } else if (kdv_loop->parsed()) {
            rep.command = "kdv loop";
            rep.inputs["genus"] = genus_g;
            auto ctx = kdv_vctx();
            std::vector<DiffPoly> prior;
            for (int g = 1; g <= genus_g; ++g) {
                DiffPoly F = solve_genus(ctx, g, prior);
                if (g == genus_g) {
                    rep.results["F_" + std::to_string(g)] = F.str();
                    rep.results["max_jet_order"] = F.max_jet_order();
                }
                prior.push_back(F);
            }
        } else if (kdv_quasi->parsed()) {
            rep.command = "kdv quasitriv";
            rep.inputs["flow"] = flow_i;
            rep.inputs["eps"] = eps_e;
            auto vctx = kdv_vctx();
            auto uctx = kdv_uctx();
            EpsSeries df = kdv_delta_f(vctx, eps_e);
            EpsSeries lhs = transform_flow_kdv(disp_flow(vctx, flow_i), df, eps_e);
            EpsSeries rhs = kdv_rhs(uctx, flow_i, eps_e);
            rep.results["transformed"] = lhs.str();
            rep.results["lax"] = rhs.str();
            bool ok = true;
            for (int k = 0; k <= eps_e; k += 2)
                if (lhs.at(k) != rhs.at(k).rebased(vctx)) ok = false;
            rep.verdicts["flows_agree"] = ok;
            if (!ok) rep.exit_code = 3;
        } else if (kdv_bracket->parsed()) {
            rep.command = "kdv bracket";
            rep.inputs["eps"] = eps_e;
            auto ctx = kdv_vctx();
            auto v = DiffPoly::jet(ctx, 0, 0);
            auto vx = DiffPoly::jet(ctx, 0, 1);
            LocalPoissonBracket pencil(ctx, eps_e);
            DeltaTerm a;
            a.coef = EpsSeries::lift(v, eps_e);
            a.order = 1;
            pencil.add_term(0, 0, a);
            DeltaTerm b;
            b.coef = EpsSeries::lift(DiffPoly::constant(ctx, Rat(-1)), eps_e);
            b.order = 1;
            b.lambda_pow = 1;
            pencil.add_term(0, 0, b);
            DeltaTerm c;
            c.coef = EpsSeries::lift(Rat(1, 2) * vx, eps_e);
            c.order = 0;
            pencil.add_term(0, 0, c);
            EpsSeries df = kdv_delta_f(ctx, eps_e);
            auto out = transform_bracket(pencil, kdv_substitution(df, eps_e), eps_e);
            rep.results["transformed_pencil"] = out.str();
            LocalPoissonBracket expected(ctx, eps_e);
            expected.add_term(0, 0, a);
            expected.add_term(0, 0, b);
            expected.add_term(0, 0, c);
            DeltaTerm d;
            d.coef = EpsSeries::monomial(DiffPoly::constant(ctx, Rat(1, 8)), 2, eps_e);
            d.order = 3;
            expected.add_term(0, 0, d);
            bool ok = LocalPoissonBracket::equal_through(out, expected, eps_e);
            rep.verdicts["matches_displayed_pencil"] = ok;
            rep.verdicts["skew_symmetric"] = out.is_skew_symmetric();
            if (!ok) rep.exit_code = 3;
        } else if (kdv_dens->parsed()) {
            rep.command = "kdv densities";
            rep.inputs["index"] = dens_i;
            rep.inputs["eps"] = eps_e;
            auto ctx = kdv_vctx();
            EpsSeries h = tau_density(dens_i, eps_e, kdv_delta_f(ctx, eps_e + 2));
            rep.results["h"] = h.str();
        } else if (wk_vtop_cmd->parsed() || wk_f0_cmd->parsed() || wk_f1_cmd->parsed()) {
            int P = deg_d + 1;
            auto names = [](int i) { return "t" + std::to_string(i); };
            if (wk_vtop_cmd->parsed()) {
                rep.command = "wk vtop";
                rep.results["v_top"] = wk_vtop(deg_d, P).str(names);
            } else if (wk_f0_cmd->parsed()) {
                rep.command = "wk f0";
                rep.results["F_0"] = wk_f0(deg_d, P).str(names);
            } else {
                rep.command = "wk f1";
                rep.results["F_1"] = wk_f1(deg_d, P).str(names);
            }
            rep.inputs["deg"] = deg_d;
        } else if (wk_int->parsed()) {
            rep.command = "wk intersect";
            rep.inputs["genus"] = wk_genus;
            rep.inputs["spec"] = spec_str;
            auto spec = parse_spec(spec_str);
            if (spec.empty()) raise(ErrorKind::Precondition, "empty --spec");
            if (wk_genus == 0) {
                std::string note;
                rep.results["number"] = wk_intersect_genus0(spec, &note).str();
                if (!note.empty()) rep.results["note"] = note;
            } else if (wk_genus == 1) {
                rep.results["number"] = wk_intersect_genus1(spec).str();
            } else if (wk_genus == 2) {
                if (lambda_which != 1 && lambda_which != 2)
                    raise(ErrorKind::Precondition, "genus 2 needs --lambda 1 or 2");
                rep.inputs["lambda"] = lambda_which;
                rep.results["number"] =
                    wk_genus2_lambda(spec, lambda_which == 1 ? HodgeClass::Lambda1
                                                             : HodgeClass::Lambda2)
                        .str();
            } else {
                raise(ErrorKind::Precondition, "--genus must be 0, 1 or 2");
            }
        } else if (wk_vir->parsed()) {
            rep.command = "wk virasoro";
            rep.inputs["m_max"] = mmax;
            rep.inputs["deg"] = deg_d;
            rep.inputs["eps"] = eps_e;
            auto ctx = kdv_vctx();
            DiffPoly F1 = solve_genus(ctx, 1, {});
            DiffPoly F2 = solve_genus(ctx, 2, {F1});
            auto vrep = wk_virasoro_check(mmax, deg_d, eps_e, F2);
            rep.results["checked_coefficients"] = vrep.checked_coefficients;
            rep.results["windows"] = vrep.notes;
            rep.results["violations"] = vrep.violations;
            rep.verdicts["residuals_vanish"] = vrep.pass;
            if (!vrep.pass) rep.exit_code = 3;
        } else if (gw0_flow->parsed()) {
            rep.command = "gw0 flow";
            rep.inputs["variety"] = variety;
            rep.inputs["alpha"] = alpha_a;
            rep.inputs["p"] = pp;
            DegreeZeroSector sec(CohomologyRing::load(variety));
            auto res = sec.htt0_flow(alpha_a, pp, 2, override_gate);
            Json lines = Json::array();
            for (int a = 0; a < sec.ring().n(); ++a)
                lines.push_back("d u[" + sec.ring().basis[a] + "]/dt = " +
                                res.transformed[a].str());
            rep.results["flow"] = lines;
            rep.verdicts["matches_displayed_hierarchy"] = res.certificate;
            if (!res.certificate) rep.exit_code = 3;
        } else if (gw0_br->parsed()) {
            rep.command = "gw0 brackets";
            rep.inputs["variety"] = variety;
            DegreeZeroSector sec(CohomologyRing::load(variety));
            auto br = sec.deg0_brackets(2, override_gate);
            rep.results["biham12_eps2_coefficient"] = br.scalar_eps2_coefficient.str();
            if (!br.detail.empty()) rep.results["detail"] = br.detail;
            rep.verdicts["first_bracket_matches"] = br.first_matches;
            rep.verdicts["second_bracket_matches"] = br.second_matches;
            rep.verdicts["skew_symmetric"] = br.skew_ok;
            rep.verdicts["scalar_reduction_matches"] = br.scalar_matches;
            if (!(br.first_matches && br.second_matches && br.skew_ok && br.scalar_matches))
                rep.exit_code = 3;
        } else if (gw0_chern->parsed()) {
            rep.command = "gw0 chern";
            rep.inputs["variety"] = variety;
            auto ring = CohomologyRing::load(variety);
            auto res = ring.chern_check();
            rep.results["lhs"] = res.lhs.str();
            rep.results["rhs"] = res.rhs.str();
            rep.results["rhs_minus_lhs"] = (res.rhs - res.lhs).str();
            rep.verdicts["chern_constraint"] = res.pass;
            if (!res.pass) rep.exit_code = 3;
        } else if (gw0_g1->parsed()) {
            rep.command = "gw0 genus1";
            rep.inputs["variety"] = variety;
            DegreeZeroSector sec(CohomologyRing::load(variety));
            rep.results["F_1"] = sec.genus1().str();
            TSeries f1 = sec.genus1_at_vtop(2, 1);
            rep.results["tau_1(unit)_one_point"] =
                f1.coefficient_of({sec.tvar_index(0, 1)}).str();
            rep.results["chi_over_24"] = (Rat(sec.ring().chi) * Rat(1, 24)).str();
        } else if (p1_theta->parsed()) {
            rep.command = "p1 theta";
            rep.inputs["p_max"] = pmax;
            P1Sector sec;
            Json lines = Json::array();
            for (int p = 0; p <= pmax; ++p) {
                lines.push_back("theta_{1," + std::to_string(p) + "} = " + sec.theta(1, p).str());
                lines.push_back("theta_{2," + std::to_string(p) + "} = " + sec.theta(2, p).str());
            }
            rep.results["theta"] = lines;
        } else if (p1_g1->parsed()) {
            rep.command = "p1 genus1";
            P1Sector sec;
            auto grad = sec.genus1_gradient();
            rep.results["dF/dv"] = grad[0].str();
            rep.results["dF/du"] = grad[1].str();
            rep.results["dF/dv_x"] = grad[2].str();
            rep.results["dF/du_x"] = grad[3].str();
            rep.results["F_1"] = sec.genus1_solve().str();
        } else if (p1_lam->parsed()) {
            rep.command = "p1 lambda";
            rep.inputs["deg"] = deg_d;
            P1Sector sec;
            auto lrep = sec.lambda_consistency(deg_d);
            Json lines = Json::array();
            for (const auto& c : lrep.checks) {
                if (c.expected.is_zero() && c.got.is_zero()) continue;
                std::ostringstream os;
                os << (c.omega_insertion ? "lambda_2" : "lambda_1") << " (";
                for (std::size_t i = 0; i < c.spec.size(); ++i)
                    os << (i ? "," : "") << c.spec[i];
                os << ") = " << c.got.str()
                   << (c.ok ? "" : "  [MISMATCH, expected " + c.expected.str() + "]");
                lines.push_back(os.str());
            }
            rep.results["numbers"] = lines;
            rep.results["checks_run"] = static_cast<int>(lrep.checks.size());
            rep.verdicts["consistency"] = lrep.pass;
            if (!lrep.pass) rep.exit_code = 3;
        } else if (p1_probe->parsed()) {
            rep.command = "p1 poly-probe";
            rep.inputs["flow"] = probe_flow;
            if (probe_flow != "s0")
                raise(ErrorKind::Precondition, "only the s0 flow probe is exposed");
            P1Sector sec;
            auto prep = sec.poly_probe_s0(2);
            rep.results["dv/ds0"] = prep.transformed[0].str();
            rep.results["du/ds0"] = prep.transformed[1].str();
            rep.results["intermediate_has_denominators"] = prep.intermediate_has_denominators;
            rep.verdicts["eps2_correction_polynomial"] = prep.pass;
            if (!prep.pass) rep.exit_code = 3;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::ValidationError:
            case ErrorKind::ParseError:
            case ErrorKind::Precondition:
                return 2;
            case ErrorKind::SolverFailure:
                return 4;
            default:
                return 3;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    rep.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    rep.print(as_json);
    return rep.exit_code;
}
