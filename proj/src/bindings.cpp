// Python bindings for the cut-selection library. The module mirrors the C++
// API one-to-one; Python-side conveniences live in python/cutsel/__init__.py.

#include "cutsel/encode.hpp"
#include "cutsel/family.hpp"
#include "cutsel/format.hpp"
#include "cutsel/milp.hpp"
#include "cutsel/policy.hpp"
#include "cutsel/rng.hpp"
#include "cutsel/scoring.hpp"
#include "cutsel/selector.hpp"
#include "cutsel/simplex.hpp"
#include "cutsel/trainer.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cutsel;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cut selection for mixed-integer programs: simplex, Gomory cuts, cut scoring, "
              "an adversarial instance family, a bipartite-graph policy network, and a "
              "REINFORCE trainer.";

    // ---- milp ------------------------------------------------------------
    py::enum_<VarType>(m, "VarType")
        .value("Binary", VarType::Binary)
        .value("Integer", VarType::Integer)
        .value("ImplicitInteger", VarType::ImplicitInteger)
        .value("Continuous", VarType::Continuous);
    py::enum_<ConsType>(m, "ConsType")
        .value("Linear", ConsType::Linear)
        .value("LogicOr", ConsType::LogicOr)
        .value("Knapsack", ConsType::Knapsack)
        .value("SetPPC", ConsType::SetPPC)
        .value("VarBound", ConsType::VarBound);

    py::class_<Triplet>(m, "Triplet")
        .def(py::init<>())
        .def(py::init([](std::size_t row, std::size_t col, double value) {
                 return Triplet{row, col, value};
             }),
             py::arg("row"), py::arg("col"), py::arg("value"))
        .def_readwrite("row", &Triplet::row)
        .def_readwrite("col", &Triplet::col)
        .def_readwrite("value", &Triplet::value);

    py::class_<MilpInstance>(m, "MilpInstance")
        .def(py::init<>())
        .def_readwrite("name", &MilpInstance::name)
        .def_readwrite("n", &MilpInstance::n)
        .def_readwrite("m", &MilpInstance::m)
        .def_readwrite("c", &MilpInstance::c)
        .def_readwrite("coeffs", &MilpInstance::coeffs)
        .def_readwrite("b", &MilpInstance::b)
        .def_readwrite("lower", &MilpInstance::lower)
        .def_readwrite("upper", &MilpInstance::upper)
        .def_readwrite("vtype", &MilpInstance::vtype)
        .def_readwrite("ctype", &MilpInstance::ctype)
        .def("validate", &MilpInstance::validate)
        .def("row", &MilpInstance::row)
        .def("dense_rows", &MilpInstance::dense_rows)
        .def("__repr__", [](const MilpInstance& inst) {
            return "MilpInstance(name='" + inst.name + "', n=" + std::to_string(inst.n) +
                   ", m=" + std::to_string(inst.m) + ")";
        });

    py::class_<Cut>(m, "Cut")
        .def(py::init<>())
        .def(py::init([](std::vector<double> coeffs, double rhs, std::string origin) {
                 return Cut{std::move(coeffs), rhs, std::move(origin)};
             }),
             py::arg("coeffs"), py::arg("rhs"), py::arg("origin") = std::string())
        .def_readwrite("coeffs", &Cut::coeffs)
        .def_readwrite("rhs", &Cut::rhs)
        .def_readwrite("origin", &Cut::origin);

    m.def("objective_value", &objective_value);
    m.def("is_integer_feasible", &is_integer_feasible, py::arg("inst"), py::arg("p"),
          py::arg("tol") = kFeasTol);
    m.def("cut_is_valid_for", &cut_is_valid_for, py::arg("cut"), py::arg("points"),
          py::arg("tol") = 1e-9);
    m.def("instance_to_json_text", &instance_to_json_text);
    m.def("instance_from_json_text", &instance_from_json_text);
    m.def("save_instance", &save_instance);
    m.def("load_instance", &load_instance);
    m.def("fmt17", &fmt17);

    // ---- simplex ---------------------------------------------------------
    py::enum_<LpStatus>(m, "LpStatus")
        .value("Optimal", LpStatus::Optimal)
        .value("Infeasible", LpStatus::Infeasible)
        .value("Unbounded", LpStatus::Unbounded);
    py::enum_<ColStatus>(m, "ColStatus")
        .value("Basic", ColStatus::Basic)
        .value("AtLower", ColStatus::AtLower)
        .value("AtUpper", ColStatus::AtUpper)
        .value("FreeNonbasic", ColStatus::FreeNonbasic);

    py::class_<RelaxedModel>(m, "RelaxedModel")
        .def(py::init<>())
        .def(py::init([](MilpInstance base, std::vector<Cut> cuts) {
                 return RelaxedModel{std::move(base), std::move(cuts)};
             }),
             py::arg("base"), py::arg("cuts") = std::vector<Cut>{})
        .def_readwrite("base", &RelaxedModel::base)
        .def_readwrite("cuts", &RelaxedModel::cuts)
        .def("n", &RelaxedModel::n)
        .def("rows", &RelaxedModel::rows)
        .def("row_coeffs", &RelaxedModel::row_coeffs)
        .def("row_rhs", &RelaxedModel::row_rhs);

    py::class_<LpSolution>(m, "LpSolution")
        .def_readonly("status", &LpSolution::status)
        .def_readonly("x", &LpSolution::x)
        .def_readonly("objective", &LpSolution::objective)
        .def_readonly("basis", &LpSolution::basis)
        .def_readonly("col_status", &LpSolution::col_status)
        .def_readonly("tableau", &LpSolution::tableau)
        .def_readonly("basic_values", &LpSolution::basic_values);

    m.def("solve_lp", &solve_lp);
    m.def("vertex_enumerate", &vertex_enumerate);
    m.def("gomory_cuts", &gomory_cuts);

    // ---- scoring ---------------------------------------------------------
    py::class_<SelectionContext>(m, "SelectionContext")
        .def(py::init<>())
        .def(py::init([](std::vector<double> c, Point xlp, std::optional<Point> incumbent) {
                 return SelectionContext{std::move(c), std::move(xlp), std::move(incumbent)};
             }),
             py::arg("c"), py::arg("xlp"), py::arg("incumbent") = std::nullopt)
        .def_readwrite("c", &SelectionContext::c)
        .def_readwrite("xlp", &SelectionContext::xlp)
        .def_readwrite("incumbent", &SelectionContext::incumbent);

    m.def("integer_support", &integer_support);
    m.def("objective_parallelism", &objective_parallelism);
    m.def("efficacy", &efficacy);
    m.def("directed_cutoff", &directed_cutoff);
    m.def("parallelism", &parallelism);
    m.def("simple_score", &simple_score);
    m.def("weighted_score", &weighted_score);

    py::class_<ScoringWeights> sw(m, "ScoringWeights");
    py::enum_<ScoringWeights::Rule>(sw, "Rule")
        .value("Simple", ScoringWeights::Rule::Simple)
        .value("Weighted", ScoringWeights::Rule::Weighted);
    sw.def(py::init<>())
        .def_readwrite("rule", &ScoringWeights::rule)
        .def_readwrite("lambda_", &ScoringWeights::lambda)
        .def_readwrite("w", &ScoringWeights::w)
        .def_readwrite("normalized", &ScoringWeights::normalized)
        .def_static("simple", &ScoringWeights::simple)
        .def_static("weighted", &ScoringWeights::weighted, py::arg("w"),
                    py::arg("normalized") = true)
        .def("validate", &ScoringWeights::validate);

    m.def("score_cut", &score_cut);

    // ---- selector --------------------------------------------------------
    py::class_<SelectorConfig>(m, "SelectorConfig")
        .def(py::init<>())
        .def_readwrite("max_cuts", &SelectorConfig::max_cuts)
        .def_readwrite("parallel_threshold", &SelectorConfig::parallel_threshold)
        .def_readwrite("readd_filtered", &SelectorConfig::readd_filtered);

    py::class_<SelectionResult>(m, "SelectionResult")
        .def_readonly("selected", &SelectionResult::selected)
        .def_readonly("n_selected", &SelectionResult::n_selected)
        .def_readonly("picked_indices", &SelectionResult::picked_indices);

    m.def("select_cuts", &select_cuts, py::arg("pool"), py::arg("forced"), py::arg("weights"),
          py::arg("ctx"), py::arg("vtype"), py::arg("cfg") = SelectorConfig{});

    // ---- family ----------------------------------------------------------
    py::class_<FamilyParams>(m, "FamilyParams")
        .def(py::init<>())
        .def(py::init([](double a, double d) { return FamilyParams{a, d}; }), py::arg("a"),
             py::arg("d"))
        .def_readwrite("a", &FamilyParams::a)
        .def_readwrite("d", &FamilyParams::d)
        .def("__repr__", [](const FamilyParams& p) {
            return "FamilyParams(a=" + fmt17(p.a) + ", d=" + fmt17(p.d) + ")";
        });

    py::enum_<CutType>(m, "CutType")
        .value("GC", CutType::GC)
        .value("ISC", CutType::ISC)
        .value("OPC", CutType::OPC);
    py::enum_<SimStatus>(m, "SimStatus")
        .value("SolvedByGC", SimStatus::SolvedByGC)
        .value("NotSolved", SimStatus::NotSolved);

    m.def("make_instance", &make_instance);
    m.def("feasible_vertices", &feasible_vertices);
    m.def("integer_points", &integer_points);
    m.def("epsilon", &epsilon);
    m.def("family_cut", &family_cut, py::arg("t"), py::arg("n"), py::arg("widened_opc") = false);
    m.def("candidate_cuts", &candidate_cuts, py::arg("n"), py::arg("last_applied") = std::nullopt);
    m.def("cut_obp", &cut_obp);
    m.def("region_bounds", &region_bounds);
    m.def("max_a", &max_a);

    py::class_<GoodCutInterval>(m, "GoodCutInterval")
        .def_readonly("lb", &GoodCutInterval::lb)
        .def_readonly("ub", &GoodCutInterval::ub)
        .def_readonly("a", &GoodCutInterval::a)
        .def_readonly("d", &GoodCutInterval::d);

    m.def("good_cut_interval", &good_cut_interval);
    m.def("achievable_lambda_range", &achievable_lambda_range);
    m.def("find_d_for_lambda", &find_d_for_lambda);

    py::class_<AdversarialResult>(m, "AdversarialResult")
        .def_readonly("params", &AdversarialResult::params)
        .def_readonly("interval", &AdversarialResult::interval)
        .def_readonly("eps_hat", &AdversarialResult::eps_hat)
        .def_readonly("gap_lo", &AdversarialResult::gap_lo)
        .def_readonly("gap_hi", &AdversarialResult::gap_hi);

    m.def("construct_adversarial", &construct_adversarial);
    m.def("construct_unsolvable", &construct_unsolvable);

    py::class_<SimOutcome>(m, "SimOutcome")
        .def_readonly("status", &SimOutcome::status)
        .def_readonly("solved_round", &SimOutcome::solved_round)
        .def_readonly("rounds_run", &SimOutcome::rounds_run)
        .def_readonly("chosen_types", &SimOutcome::chosen_types)
        .def_readonly("lp_objectives", &SimOutcome::lp_objectives)
        .def_readonly("final_x", &SimOutcome::final_x);

    m.def("simulate_pure_cutting", &simulate_pure_cutting, py::arg("p"), py::arg("lambda_"),
          py::arg("max_rounds"));

    py::class_<FamilyVertexSets>(m, "FamilyVertexSets")
        .def_readonly("gc", &FamilyVertexSets::gc)
        .def_readonly("isc", &FamilyVertexSets::isc)
        .def_readonly("opc", &FamilyVertexSets::opc);

    m.def("known_vertex_sets", &known_vertex_sets);

    // ---- encode ----------------------------------------------------------
    py::class_<BipartiteGraph::Edge>(m, "Edge")
        .def_readonly("cons", &BipartiteGraph::Edge::cons)
        .def_readonly("var", &BipartiteGraph::Edge::var)
        .def_readonly("coeff", &BipartiteGraph::Edge::coeff);

    py::class_<BipartiteGraph>(m, "BipartiteGraph")
        .def_readonly("n", &BipartiteGraph::n)
        .def_readonly("m", &BipartiteGraph::m)
        .def_readonly("V", &BipartiteGraph::V)
        .def_readonly("C", &BipartiteGraph::C)
        .def_readonly("E", &BipartiteGraph::E);

    m.def("encode", &encode);
    m.def("graph_to_json_text", &graph_to_json_text);

    // ---- rng -------------------------------------------------------------
    py::class_<SplitMix64>(m, "SplitMix64")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next_u64", &SplitMix64::next_u64)
        .def("next_uniform", py::overload_cast<>(&SplitMix64::next_uniform))
        .def("next_uniform", py::overload_cast<double, double>(&SplitMix64::next_uniform),
             py::arg("lo"), py::arg("hi"))
        .def("next_normal", &SplitMix64::next_normal);

    // ---- policy ----------------------------------------------------------
    py::class_<PolicyParams>(m, "PolicyParams")
        .def_static("zeros", &PolicyParams::zeros, py::arg("width") = 32)
        .def_static("init", &PolicyParams::init, py::arg("seed"), py::arg("width") = 32)
        .def_readonly("width", &PolicyParams::width)
        .def("count", &PolicyParams::count)
        .def("to_flat", &PolicyParams::to_flat)
        .def_static("from_flat", &PolicyParams::from_flat, py::arg("flat"), py::arg("width"));

    m.def("forward",
          py::overload_cast<const BipartiteGraph&, const PolicyParams&>(&forward));

    py::class_<GaussianAction>(m, "GaussianAction")
        .def_readonly("mu", &GaussianAction::mu)
        .def_readonly("gamma", &GaussianAction::gamma)
        .def_readonly("sample", &GaussianAction::sample)
        .def_readonly("logprob", &GaussianAction::logprob);

    m.def("sample_action", &sample_action);
    m.def("grad_logprob", &grad_logprob);
    m.def("gamma_schedule", &gamma_schedule);
    m.def("seed_search", &seed_search, py::arg("graphs"), py::arg("n_seeds"),
          py::arg("width") = 32);
    m.def("save_checkpoint", &save_checkpoint);
    m.def("load_checkpoint", &load_checkpoint);

    // ---- trainer ---------------------------------------------------------
    py::class_<RolloutConfig>(m, "RolloutConfig")
        .def(py::init<>())
        .def_readwrite("n_rounds", &RolloutConfig::n_rounds)
        .def_readwrite("cuts_per_round", &RolloutConfig::cuts_per_round)
        .def_readwrite("parallel_threshold", &RolloutConfig::parallel_threshold)
        .def_readwrite("baseline_weights", &RolloutConfig::baseline_weights)
        .def_readwrite("incumbent", &RolloutConfig::incumbent)
        .def_readwrite("reference_objective", &RolloutConfig::reference_objective);

    m.def("brute_force_reference", &brute_force_reference);
    m.def("rollout", &rollout, py::arg("inst"), py::arg("weights"),
          py::arg("cfg") = RolloutConfig{});
    m.def("reward", &reward, py::arg("inst"), py::arg("action"), py::arg("cfg") = RolloutConfig{});
    m.def("relative_improvement", &relative_improvement);

    py::class_<AdamState>(m, "AdamState")
        .def(py::init<std::size_t>(), py::arg("count"))
        .def_readonly("m", &AdamState::m)
        .def_readonly("v", &AdamState::v)
        .def_readonly("t", &AdamState::t);

    m.def(
        "adam_step",
        [](std::vector<double> theta, const std::vector<double>& grad, AdamState& state,
           double lr) {
            adam_step(theta, grad, state, lr);
            return theta;
        },
        py::arg("theta"), py::arg("grad"), py::arg("state"), py::arg("lr") = 5e-4,
        "Returns the updated parameter vector; the Adam state is updated in place.");

    py::class_<EpochStats>(m, "EpochStats")
        .def_readonly("mean_reward", &EpochStats::mean_reward)
        .def_readonly("mean_logprob", &EpochStats::mean_logprob)
        .def_readonly("gamma", &EpochStats::gamma);

    m.def("reinforce_batch", &reinforce_batch, py::arg("theta"), py::arg("adam"),
          py::arg("batch"), py::arg("n_samples"), py::arg("gamma"), py::arg("cfg"),
          py::arg("rng"), py::arg("reward_fn") = RewardFn{});

    py::class_<GridRow>(m, "GridRow")
        .def_readonly("w", &GridRow::w)
        .def_readonly("gap", &GridRow::gap)
        .def_readonly("improvement", &GridRow::improvement);

    py::class_<GridResult>(m, "GridResult")
        .def_readonly("best_weights", &GridResult::best_weights)
        .def_readonly("best_gap", &GridResult::best_gap)
        .def_readonly("baseline_gap", &GridResult::baseline_gap)
        .def_readonly("table", &GridResult::table);

    m.def("grid_search", &grid_search, py::arg("inst"), py::arg("resolution"),
          py::arg("cfg") = RolloutConfig{});
    m.def("gen_packing", &gen_packing);
    m.def("gen_covering", &gen_covering);
    m.def("gen_lot_sizing", &gen_lot_sizing);
    m.def("synthetic_corpus", &synthetic_corpus);
}
