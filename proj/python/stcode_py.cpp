#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "stcode/analysis.hpp"
#include "stcode/bench.hpp"
#include "stcode/error.hpp"
#include "stcode/mds_verify.hpp"
#include "stcode/repair.hpp"
#include "stcode/shard.hpp"
#include "stcode/st_code.hpp"

namespace py = pybind11;
using namespace stcode;

namespace {

CodeParams make_params(int n, int k, int alpha, int w, const std::string& mode, std::uint64_t seed) {
  CodeParams p;
  p.n = n;
  p.k = k;
  p.alpha = alpha;
  p.field = gf::FieldSpec::standard(w == 0 ? default_field_width(n, k, alpha) : w);
  p.mode = parse_partition_mode(mode);
  p.seed = seed;
  return p;
}

py::list cells(const std::vector<Cell>& cs) {
  py::list out;
  for (const Cell c : cs) out.append(py::make_tuple(c.row, c.col));
  return out;
}

// Codeword as a list of node columns.
std::vector<std::vector<Elem>> columns(const SymbolGrid& g) {
  std::vector<std::vector<Elem>> out;
  for (int c = 0; c < g.cols(); ++c) out.push_back(g.column(c));
  return out;
}

SymbolGrid from_columns(const CodeDescriptor& d, const std::vector<std::vector<Elem>>& cols) {
  if (cols.size() != std::size_t(d.n())) throw ParameterError("expected one column per node");
  SymbolGrid g(d.alpha(), d.n());
  for (int c = 0; c < d.n(); ++c) {
    if (cols[c].size() != std::size_t(d.alpha())) throw ParameterError("each column holds alpha symbols");
    g.set_column(c, cols[c]);
  }
  return g;
}

}  // namespace

PYBIND11_MODULE(_stcode, m) {
  m.doc() = "Set-transformed Reed-Solomon array codes";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DecodeError>(m, "DecodeError", PyExc_RuntimeError);
  py::register_exception<VerificationExhaustedError>(m, "VerificationExhaustedError", PyExc_RuntimeError);
  py::register_exception<MissingSymbolError>(m, "MissingSymbolError", PyExc_LookupError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<CodeDescriptor>(m, "Code")
      .def(py::init([](int n, int k, int alpha, int w, const std::string& mode, std::uint64_t seed) {
             return build_code(make_params(n, k, alpha, w, mode, seed));
           }),
           py::arg("n"), py::arg("k"), py::arg("alpha"), py::arg("w") = 0, py::arg("mode") = "kr",
           py::arg("seed") = 1)
      .def_property_readonly("n", &CodeDescriptor::n)
      .def_property_readonly("k", &CodeDescriptor::k)
      .def_property_readonly("alpha", &CodeDescriptor::alpha)
      .def_property_readonly("w", [](const CodeDescriptor& d) { return d.field().w(); })
      .def_property_readonly("mode", [](const CodeDescriptor& d) { return std::string(to_string(d.params().mode)); })
      .def_property_readonly("verified", &CodeDescriptor::verified)
      .def_property_readonly("partition",
                             [](const CodeDescriptor& d) {
                               py::list out;
                               for (const auto& r : d.partition()) out.append(py::make_tuple(r.first, r.width));
                               return out;
                             })
      .def(
          "encode", [](const CodeDescriptor& d, const std::vector<Elem>& data) { return columns(st_encode(d, data)); },
          py::arg("data"), "k*alpha data symbols (row-major) -> list of n node columns")
      .def(
          "decode",
          [](const CodeDescriptor& d, const std::map<int, std::vector<Elem>>& nodes) {
            std::vector<NodeColumn> cols;
            for (const auto& [node, syms] : nodes) cols.push_back({node, syms});
            return st_decode(d, cols);
          },
          py::arg("columns"), "{node: column} with at least k entries -> data symbols")
      .def(
          "repair_plan",
          [](const CodeDescriptor& d, int node) {
            const RepairPlan p = plan_repair(d, node);
            py::dict out;
            out["node"] = p.failed_node;
            out["major_row"] = p.major_row;
            out["s1"] = cells(p.s1);
            out["s2"] = cells(p.s2);
            out["s3"] = cells(p.s3);
            out["total"] = p.total();
            out["raw"] = p.raw_downloads;
            return out;
          },
          py::arg("node"))
      .def(
          "repair",
          [](const CodeDescriptor& d, const std::vector<std::vector<Elem>>& cols, int node) {
            const SymbolGrid g = from_columns(d, cols);
            GridSource src(g, node);
            TrackingSource tracker(src);
            auto symbols = execute_repair(d, plan_repair(d, node), tracker);
            return py::make_tuple(symbols, tracker.count());
          },
          py::arg("columns"), py::arg("node"), "Rebuilds one column; returns (symbols, symbols read)")
      .def("bandwidth",
           [](const CodeDescriptor& d) {
             const BandwidthReport r = measure_bandwidth(d);
             py::dict out;
             out["counts"] = r.counts;
             out["average_ratio"] = r.average_ratio().value();
             out["average_percent"] = r.average_ratio().percent();
             return out;
           })
      .def(
          "verify",
          [](const CodeDescriptor& d, std::uint64_t limit) {
            const MdsVerdict v = verify_mds(d, limit);
            py::dict out;
            out["ok"] = v.ok;
            out["exhaustive"] = v.exhaustive;
            out["subsets_checked"] = v.subsets_checked;
            out["failing_subset"] = v.failing_subset;
            return out;
          },
          py::arg("limit") = 1'000'000)
      .def("with_forced_theta", &CodeDescriptor::with_forced_theta, py::arg("subarray"), py::arg("group"),
           py::arg("theta"));

  m.def("repair_lower_bound", &repair_lower_bound, py::arg("n"), py::arg("k"), py::arg("alpha"));
  m.def("field_size_bound", &field_size_bound, py::arg("n"), py::arg("k"), py::arg("alpha"));
  m.def(
      "cutset_ratio", [](int n, int k) { return cutset_ratio(n, k).value(); }, py::arg("n"), py::arg("k"));
  m.def(
      "cutset_percent", [](int n, int k) { return cutset_ratio(n, k).percent(); }, py::arg("n"), py::arg("k"));
  m.def("elastic_node_lower_bound", &elastic_node_lower_bound, py::arg("n"), py::arg("k"), py::arg("alpha"));
  m.def("gap_nodes", &gap_nodes, py::arg("n"), py::arg("k"), py::arg("alpha"));

  m.def(
      "encode_file",
      [](const std::filesystem::path& input, const std::filesystem::path& out, int n, int k, int alpha, int w,
         const std::string& mode, std::uint64_t seed, std::uint32_t stripe_size) {
        return encode_file(input, out, {make_params(n, k, alpha, w, mode, seed), stripe_size});
      },
      py::arg("input"), py::arg("out_dir"), py::arg("n"), py::arg("k"), py::arg("alpha"), py::arg("w") = 0,
      py::arg("mode") = "kr", py::arg("seed") = 1, py::arg("stripe_size") = 1);
  m.def("decode_dir", &decode_dir, py::arg("dir"), py::arg("output"));
  m.def(
      "repair_dir",
      [](const std::filesystem::path& dir, int node) {
        const RepairReport r = repair_dir(dir, node);
        py::dict out;
        out["node"] = r.node;
        out["stripes"] = r.stripes;
        out["symbols_per_stripe"] = r.symbols_per_stripe;
        out["symbols_read"] = r.symbols_read;
        out["s1"] = r.s1;
        out["s2"] = r.s2;
        out["s3"] = r.s3;
        out["ratio"] = r.ratio.rounded(3);
        out["lower_bound"] = r.lower_bound;
        return out;
      },
      py::arg("dir"), py::arg("node"));
}
