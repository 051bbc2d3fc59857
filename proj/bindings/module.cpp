#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parityforge/circuit.hpp"
#include "parityforge/cost.hpp"
#include "parityforge/layout_io.hpp"
#include "parityforge/sampler.hpp"
#include "parityforge/synth.hpp"
#include "parityforge/verify.hpp"

namespace py = pybind11;
using namespace pf;

namespace {

NoiseParams make_noise(double p, double eta, unsigned rounds, const std::string& regime) {
    NoiseParams n;
    n.p = p;
    n.eta = eta;
    n.n_rounds = rounds;
    n.regime = parse_regime(regime);
    return n;
}

UnfoldedLayout make_layout_py(unsigned m, const std::string& target, unsigned drep,
                              bool nearest_neighbour) {
    LayoutOptions opt;
    opt.target = target == "repetition" ? TargetMode::Repetition : TargetMode::Ideal;
    opt.repetition_distance = drep;
    opt.nearest_neighbour = nearest_neighbour;
    return make_layout(m, opt);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "parity-unfolded magic-state factory construction, simulation and costing";

    // GF(2) and code primitives
    py::class_<BitMatrix>(m, "BitMatrix")
        .def(py::init<std::size_t, std::size_t>())
        .def_property_readonly("n_rows", &BitMatrix::n_rows)
        .def_property_readonly("n_cols", &BitMatrix::n_cols)
        .def("get", &BitMatrix::get)
        .def("set", &BitMatrix::set)
        .def("row_weight", &BitMatrix::row_weight)
        .def("row_support", &BitMatrix::row_support);
    m.def("rm_generator", &rm_generator, py::arg("r"), py::arg("m"));
    m.def("rm_dimension", &rm_dimension, py::arg("r"), py::arg("m"));
    m.def("check_duality", &check_duality, py::arg("r"), py::arg("m"));
    m.def("gf2_rank", &gf2_rank);
    m.def("gf2_kernel", &gf2_kernel);

    py::class_<CssCode>(m, "CssCode")
        .def_readonly("z_checks", &CssCode::z_checks)
        .def_readonly("x_checks", &CssCode::x_checks)
        .def_readonly("logical_x", &CssCode::logical_x)
        .def_readonly("logical_z", &CssCode::logical_z)
        .def_property_readonly("n", [](const CssCode& c) { return c.params.n; })
        .def_property_readonly("d_x", [](const CssCode& c) { return c.params.d_x.value_or(0); })
        .def_property_readonly("d_z", [](const CssCode& c) { return c.params.d_z.value_or(0); });
    m.def("shortened_qrm", &shortened_qrm, py::arg("m"));

    // layouts
    py::class_<UnfoldedLayout>(m, "UnfoldedLayout")
        .def_property_readonly("m", [](const UnfoldedLayout& l) { return l.grid.m; })
        .def_property_readonly("n_qubits", [](const UnfoldedLayout& l) { return l.qubits.size(); })
        .def_property_readonly("n_stabilizers",
                               [](const UnfoldedLayout& l) { return l.z_stabilizers.size(); })
        .def("to_json", &export_layout_json)
        .def("to_svg", &export_layout_svg);
    m.def("make_layout", &make_layout_py, py::arg("m"), py::arg("target") = "ideal",
          py::arg("repetition_distance") = 0, py::arg("nearest_neighbour") = true);
    m.def("import_layout", &import_layout_json);
    m.def("logical_x_supports", [](const UnfoldedLayout& l) { return logical_x_supports(l); });

    // verification
    m.def("verify_all", [](const UnfoldedLayout& layout) {
        const auto summary = verify_layout(layout, true, true, true, true, true);
        py::dict out;
        for (const auto& rep : summary.reports) {
            py::dict entry;
            entry["passed"] = rep.passed;
            entry["detail"] = rep.detail;
            out[rep.name.c_str()] = entry;
        }
        out["all_passed"] = summary.all_passed();
        return out;
    });
    m.def("logical_distance", &logical_distance, py::arg("layout"), py::arg("k"));
    m.def("transversal_phase_check", &transversal_phase_check, py::arg("m"), py::arg("k"));

    // analytics
    m.def("p_eff",
          [](unsigned k, double p, double eta, unsigned rounds, const std::string& regime) {
              return p_eff(k, make_noise(p, eta, rounds, regime));
          },
          py::arg("k"), py::arg("p") = 1e-3, py::arg("eta") = 1e5, py::arg("rounds") = 10,
          py::arg("regime") = "scaled");
    m.def("p_dist",
          [](unsigned k, double p, double eta, unsigned rounds, const std::string& regime) {
              return p_dist(k, make_noise(p, eta, rounds, regime));
          },
          py::arg("k"), py::arg("p") = 1e-3, py::arg("eta") = 1e5, py::arg("rounds") = 10,
          py::arg("regime") = "scaled");
    m.def("p_gate",
          [](unsigned k, double p, double eta, unsigned rounds, const std::string& regime) {
              return p_gate(k, make_noise(p, eta, rounds, regime)).value;
          },
          py::arg("k"), py::arg("p") = 1e-3, py::arg("eta") = 1e5, py::arg("rounds") = 10,
          py::arg("regime") = "scaled");

    // cost model
    m.def("n_qubits", [](unsigned k, const std::string& conn) {
        return n_qubits(k, parse_connectivity(conn));
    }, py::arg("k"), py::arg("connectivity") = "nn");
    m.def("n_data", &n_data, py::arg("k"));
    m.def("factory_capacity", &factory_capacity, py::arg("k"), py::arg("k_prime"));
    m.def("cost_native", [](unsigned k, double p, double eta, unsigned rounds) {
        CostParams c;
        c.noise = make_noise(p, eta, rounds, "scaled");
        return cost_native(k, c).value;
    }, py::arg("k"), py::arg("p") = 1e-3, py::arg("eta") = 1e5, py::arg("rounds") = 10);
    m.def("break_even", [](double eps) {
        CostParams c;
        return break_even(eps, c);
    }, py::arg("eps") = 1e-3);

    // simulation
    m.def("simulate",
          [](const UnfoldedLayout& layout, unsigned k, double p, double eta, unsigned rounds,
             const std::string& mode, uint64_t shots, uint64_t seed) {
              const auto noise = make_noise(p, eta, rounds, "scaled");
              const auto est =
                  estimate(build_circuit(layout, k, rounds, noise, parse_nc_mode(mode)), shots, seed);
              py::dict out;
              out["shots"] = est.shots;
              out["accepted"] = est.accepted;
              out["flips"] = est.flips;
              out["p_accept"] = est.p_accept;
              out["p_logical"] = est.p_logical;
              out["ci_low"] = est.ci_low;
              out["ci_high"] = est.ci_high;
              return out;
          },
          py::arg("layout"), py::arg("k"), py::arg("p"), py::arg("eta"), py::arg("rounds") = 10,
          py::arg("mode") = "twirl", py::arg("shots") = 100000, py::arg("seed") = 1);
    m.def("rescale_lower_bound", &rescale_lower_bound, py::arg("p_measured"), py::arg("k"),
          py::arg("p"));

    // synthesis
    py::class_<Unitary2>(m, "Unitary2")
        .def_static("haar", &Unitary2::haar, py::arg("key"))
        .def_static("rz", &Unitary2::rz, py::arg("theta"))
        .def_static("z_rotation", &Unitary2::z_rotation, py::arg("k"))
        .def_property_readonly("entries", [](const Unitary2& u) {
            return std::vector<cplx>(u.u.begin(), u.u.end());
        });
    m.def("trace_distance", &trace_distance);
    py::class_<BlockTable>(m, "BlockTable")
        .def_property_readonly("total_matrices", &BlockTable::total_matrices);
    m.def("enumerate_blocks", [](const std::string& gateset, double r_trunc) {
        return enumerate_blocks(GateSet::parse(gateset),
                                static_cast<int>(std::llround(2 * r_trunc)));
    }, py::arg("gateset") = "C2", py::arg("r_trunc") = 8.0);
    m.def("synthesize",
          [](const Unitary2& target, const BlockTable& table, double budget,
             const std::string& backend, std::size_t samples, uint64_t seed) {
              SynthOptions opt;
              opt.backend =
                  backend == "exhaustive" ? SynthBackend::Exhaustive : SynthBackend::ChainSampler;
              opt.budget = budget;
              opt.samples = samples;
              opt.seed = seed;
              const auto res = synthesize(target, table, opt);
              py::dict out;
              out["word"] = res.word;
              out["cost"] = res.cost;
              out["eps"] = res.eps;
              py::dict counts;
              for (const auto& [level, count] : res.counts)
                  counts[py::int_(level)] = count;
              out["counts"] = counts;
              return out;
          },
          py::arg("target"), py::arg("table"), py::arg("budget"), py::arg("backend") = "chain",
          py::arg("samples") = 2000, py::arg("seed") = 1);
    m.def("lower_bound_gates", &lower_bound_gates, py::arg("k"), py::arg("eps"));
}
