#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "cantorsum/config.hpp"
#include "cantorsum/geometry.hpp"
#include "cantorsum/ifs.hpp"
#include "cantorsum/interval_union.hpp"
#include "cantorsum/measures.hpp"
#include "cantorsum/transversality.hpp"

namespace py = pybind11;
using namespace cantorsum;

namespace {

using PairList = std::vector<std::pair<double, double>>;

IntervalUnion to_union(const PairList& pairs) {
  std::vector<Interval> ivs;
  ivs.reserve(pairs.size());
  for (const auto& [lo, hi] : pairs) ivs.push_back(Interval{lo, hi});
  return IntervalUnion::from_intervals(std::move(ivs));
}

PairList from_union(const IntervalUnion& u) {
  PairList out;
  out.reserve(u.size());
  for (const Interval& iv : u.intervals()) out.emplace_back(iv.lo, iv.hi);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "dynamically defined Cantor sets: dimensions, thickness, sumsets, verification";

  m.def("moran_dimension", &moran_dimension, py::arg("ratios"),
        "Unique s in (0, 1] with sum |c_i|^s = 1.");
  m.def(
      "equilibrium_weights",
      [](const std::vector<double>& ratios) {
        return equilibrium_weights(ratios).probabilities();
      },
      py::arg("ratios"), "Weights |c_i|^s at the Moran exponent.");
  m.def(
      "entropy",
      [](const std::vector<double>& p) { return entropy(BernoulliWeights(p)); },
      py::arg("weights"), "Shannon entropy in nats.");
  m.def("gap_lemma_predicate", &gap_lemma_predicate, py::arg("tau1"), py::arg("tau2"));
  m.def(
      "middle_alpha_classify",
      [](double a, double b) {
        RegionVerdict v = middle_alpha_classify(a, b);
        py::dict d;
        d["tag"] = to_string(v.tag);
        d["dim_sum"] = v.dim_sum;
        d["thickness_product"] = v.thickness_product;
        return d;
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "minkowski_sum",
      [](const PairList& a, const PairList& b) {
        return from_union(minkowski_sum(to_union(a), to_union(b)));
      },
      py::arg("a"), py::arg("b"), "Arithmetic sumset of two interval unions.");
  m.def(
      "measure", [](const PairList& a) { return to_union(a).measure(); }, py::arg("intervals"));
  m.def(
      "thickness", [](const PairList& a) { return thickness(to_union(a)); }, py::arg("intervals"));
  m.def(
      "middle_alpha_cover",
      [](double a, uint32_t depth) {
        return from_union(generation_cover(middle_alpha_ifs(a), depth));
      },
      py::arg("a"), py::arg("depth"), "Generation cover of the middle-alpha set.");
  m.def(
      "sum_cover_measures",
      [](double a, double b, uint32_t depth) {
        SumCoverAnalysis an = sum_cover_analysis(CoverSource(middle_alpha_ifs(a)),
                                                 CoverSource(middle_alpha_ifs(b)), depth);
        std::vector<py::dict> rows;
        for (const SumCoverRow& r : an.rows) {
          py::dict d;
          d["depth"] = r.depth;
          d["interval_count"] = r.interval_count;
          d["measure"] = r.measure;
          d["hint"] = r.hint;
          rows.push_back(std::move(d));
        }
        return rows;
      },
      py::arg("a"), py::arg("b"), py::arg("depth"),
      "Cover measures of the middle-alpha sumset by depth.");
  m.def(
      "pushforward_histogram",
      [](double a, uint32_t depth, double bin_width) {
        MeasureHistogram h = pushforward_histogram(
            middle_alpha_ifs(a), equilibrium_weights({a, a}), depth, bin_width);
        return py::make_tuple(h.origin, h.bin_width, h.weights);
      },
      py::arg("a"), py::arg("depth"), py::arg("bin_width"),
      "Equilibrium-measure histogram of the middle-alpha set.");
  m.def(
      "convolution_l2",
      [](double origin1, double bw1, const std::vector<double>& w1, double origin2, double bw2,
         const std::vector<double>& w2) {
        ConvolutionResult r = convolution_density(MeasureHistogram{bw1, origin1, w1},
                                                  MeasureHistogram{bw2, origin2, w2});
        return py::make_tuple(r.hist.origin, r.hist.bin_width, r.hist.weights, r.l2_norm);
      },
      "Convolution of two histograms and the L2 norm of its density.");
  m.def(
      "verify",
      [](const std::string& config_text) {
        json cfg = parse_config_text(config_text);
        CantorFamily fam = parse_family(cfg.at("family"), "/family");
        CapsConfig caps = parse_caps(cfg);
        EtaSpec eta = parse_measure(cfg.at("measure"), "/measure", caps.words);
        VerifySettings settings = parse_verify_settings(cfg, parse_seed(cfg), caps.words);
        TransversalityReport rep =
            assemble_report(fam, eta.histogram, eta.d, eta.frostman_C, settings);
        return rep.to_json().dump();
      },
      py::arg("config_json"),
      "Run the full verification pipeline on a JSON config; returns the report as JSON.");
}
