#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "graphstate/detrend.hpp"
#include "graphstate/pipeline.hpp"

namespace py = pybind11;
using namespace graphstate;

PYBIND11_MODULE(_graphstate, m) {
  m.doc() = "Latent state spaces of time-varying graphs";

  py::class_<TimedEdge>(m, "TimedEdge")
      .def(py::init([](NodeId u, NodeId v, Timestamp t) {
             return TimedEdge{u, v, t};
           }),
           py::arg("u"), py::arg("v"), py::arg("t"))
      .def_readwrite("u", &TimedEdge::u)
      .def_readwrite("v", &TimedEdge::v)
      .def_readwrite("t", &TimedEdge::t)
      .def(py::self == py::self)
      .def("__repr__", [](const TimedEdge& e) {
        std::ostringstream os;
        os << "TimedEdge(u=" << e.u << ", v=" << e.v << ", t=" << e.t << ")";
        return os.str();
      });

  py::class_<EdgeStream>(m, "EdgeStream")
      .def_property_readonly("edges", &EdgeStream::edges)
      .def("__len__", &EdgeStream::size)
      .def_property_readonly("node_count", &EdgeStream::node_count)
      .def_property_readonly("self_loops_dropped", &EdgeStream::self_loops_dropped)
      .def_property_readonly("t_min", &EdgeStream::t_min)
      .def_property_readonly("t_max", &EdgeStream::t_max);

  m.def("normalize_edges", &normalize_edges, py::arg("edges"));
  m.def("parse_edge_stream",
        py::overload_cast<const std::string&>(&parse_edge_stream), py::arg("text"),
        "Parse 'src,dst,timestamp' lines into a normalized stream");
  m.def("load_edge_stream", &load_edge_stream, py::arg("file"));

  py::class_<WeightedEdge>(m, "WeightedEdge")
      .def_readonly("u", &WeightedEdge::u)
      .def_readonly("v", &WeightedEdge::v)
      .def_readonly("w", &WeightedEdge::w)
      .def("__repr__", [](const WeightedEdge& e) {
        std::ostringstream os;
        os << "WeightedEdge(u=" << e.u << ", v=" << e.v << ", w=" << fmt_g12(e.w) << ")";
        return os.str();
      });

  py::class_<SnapshotGraph>(m, "SnapshotGraph")
      .def_property_readonly("index", &SnapshotGraph::index)
      .def_property_readonly("eval_time", &SnapshotGraph::eval_time)
      .def_property_readonly("edges", &SnapshotGraph::edges)
      .def_property_readonly("active_nodes", &SnapshotGraph::active_nodes)
      .def_property_readonly("edge_count", &SnapshotGraph::edge_count)
      .def("weight", &SnapshotGraph::weight, py::arg("a"), py::arg("b"))
      .def("total_weight", &SnapshotGraph::total_weight)
      .def("is_active", &SnapshotGraph::is_active, py::arg("v"));

  m.def("aligned_origin", &aligned_origin, py::arg("stream"), py::arg("delta_t"));
  m.def("window_count", &window_count, py::arg("stream"), py::arg("t0"), py::arg("delta_t"));
  m.def(
      "discrete_snapshots",
      [](const EdgeStream& stream, Timestamp delta_t, Timestamp t0) {
        DiscreteConfig cfg;
        cfg.delta_t = delta_t;
        cfg.t0 = t0;
        return discrete_snapshots(stream, cfg);
      },
      py::arg("stream"), py::arg("delta_t") = Timestamp{86400}, py::arg("t0") = Timestamp{0});
  m.def("decay_probability", &decay_probability, py::arg("t"), py::arg("t_prime"),
        py::arg("tau"));
  m.def(
      "probabilistic_snapshots",
      [](const EdgeStream& stream, double tau, double cutoff, Timestamp grid_step, Timestamp t0,
         std::size_t n_steps) {
        DecayConfig cfg;
        cfg.tau = tau;
        cfg.cutoff = cutoff;
        cfg.grid_step = grid_step;
        return probabilistic_snapshots(stream, cfg, t0, n_steps);
      },
      py::arg("stream"), py::arg("tau") = 12.0 * 86400.0, py::arg("cutoff") = 1e-4,
      py::arg("grid_step") = Timestamp{86400}, py::arg("t0") = Timestamp{0},
      py::arg("n_steps") = std::size_t{1});

  py::class_<FeatureVector>(m, "FeatureVector")
      .def(py::init([](double avg_degree, double avg_clustering) {
             return FeatureVector{avg_degree, avg_clustering};
           }),
           py::arg("avg_degree") = 0.0, py::arg("avg_clustering") = 0.0)
      .def_readwrite("avg_degree", &FeatureVector::avg_degree)
      .def_readwrite("avg_clustering", &FeatureVector::avg_clustering)
      .def(py::self == py::self)
      .def("__repr__", [](const FeatureVector& f) {
        std::ostringstream os;
        os << "FeatureVector(avg_degree=" << fmt_g12(f.avg_degree)
           << ", avg_clustering=" << fmt_g12(f.avg_clustering) << ")";
        return os.str();
      });

  py::class_<FeatureSeries>(m, "FeatureSeries")
      .def(py::init<>())
      .def_readwrite("raw", &FeatureSeries::raw)
      .def_readwrite("detrended", &FeatureSeries::detrended)
      .def("__len__", &FeatureSeries::size);

  py::enum_<DegreeDenominator>(m, "DegreeDenominator")
      .value("ACTIVE", DegreeDenominator::Active)
      .value("GLOBAL", DegreeDenominator::Global);

  m.def("average_degree", py::overload_cast<const SnapshotGraph&>(&average_degree),
        py::arg("snapshot"));
  m.def("average_degree",
        py::overload_cast<const SnapshotGraph&, std::size_t>(&average_degree),
        py::arg("snapshot"), py::arg("denominator_nodes"));
  m.def("local_clustering", &local_clustering, py::arg("snapshot"), py::arg("v"));
  m.def("average_clustering", &average_clustering, py::arg("snapshot"));
  m.def(
      "extract_features",
      [](const std::vector<SnapshotGraph>& snapshots, DegreeDenominator denom,
         std::size_t global_node_count) {
        FeatureOptions opts;
        opts.degree_denominator = denom;
        opts.global_node_count = global_node_count;
        return extract_features(snapshots, opts);
      },
      py::arg("snapshots"), py::arg("degree_denominator") = DegreeDenominator::Active,
      py::arg("global_node_count") = std::size_t{0});

  py::class_<LinearFit>(m, "LinearFit")
      .def_readonly("slope", &LinearFit::slope)
      .def_readonly("intercept", &LinearFit::intercept);

  m.def(
      "linear_fit", [](const std::vector<double>& y) { return linear_fit(y); }, py::arg("y"));
  m.def(
      "detrend", [](const std::vector<double>& y) { return detrend(y); }, py::arg("y"),
      "Residuals after removing the least-squares line");
  m.def(
      "detrend_features", [](FeatureSeries s) { return detrend(std::move(s)); },
      py::arg("series"), "Per-column detrend; fills series.detrended");

  py::class_<Standardization>(m, "Standardization")
      .def_readonly("mean", &Standardization::mean)
      .def_readonly("stddev", &Standardization::stddev);

  m.def("standardize", &standardize, py::arg("points"));
  m.def("apply_standardization", &apply_standardization, py::arg("points"), py::arg("st"));

  py::class_<KMeansResult>(m, "KMeansResult")
      .def_readonly("centroids", &KMeansResult::centroids)
      .def_readonly("assignments", &KMeansResult::assignments)
      .def_readonly("inertia", &KMeansResult::inertia)
      .def_readonly("inertia_history", &KMeansResult::inertia_history)
      .def_readonly("iterations", &KMeansResult::iterations);

  m.def("kmeans", &kmeans, py::arg("points"), py::arg("k"), py::arg("seed"),
        py::arg("max_iter") = 300, py::arg("tol") = 1e-9);

  py::class_<StateModel>(m, "StateModel")
      .def_readonly("k", &StateModel::k)
      .def_readonly("seed", &StateModel::seed)
      .def_readonly("standardization", &StateModel::standardization)
      .def_readonly("centroids", &StateModel::centroids)
      .def_readonly("centroid_order", &StateModel::centroid_order)
      .def_readonly("labels", &StateModel::labels)
      .def_readonly("inertia", &StateModel::inertia)
      .def_readonly("inertia_history", &StateModel::inertia_history);

  py::class_<TransitionMatrix>(m, "TransitionMatrix")
      .def_readonly("k", &TransitionMatrix::k)
      .def_readonly("counts", &TransitionMatrix::counts);

  m.def("state_name", &state_name, py::arg("index"));
  m.def("state_index", &state_index, py::arg("name"));
  m.def(
      "transition_matrix",
      [](const std::vector<int>& labels, int k) { return transition_matrix(labels, k); },
      py::arg("labels"), py::arg("k"));
  m.def(
      "fit_state_space",
      [](const FeatureSeries& series, int k, std::uint64_t seed, int restarts, bool standardize,
         bool cluster_on_detrended) {
        FitOptions opts;
        opts.k = k;
        opts.seed = seed;
        opts.restarts = restarts;
        opts.standardize = standardize;
        opts.cluster_on_detrended = cluster_on_detrended;
        return fit_state_space(series, opts);
      },
      py::arg("series"), py::arg("k") = 7, py::arg("seed") = std::uint64_t{42},
      py::arg("restarts") = 1, py::arg("standardize") = true,
      py::arg("cluster_on_detrended") = true,
      "Returns (StateModel, TransitionMatrix)");

  py::class_<SynthEvent>(m, "SynthEvent")
      .def(py::init([](int start_day, int end_day, double multiplier) {
             return SynthEvent{start_day, end_day, multiplier};
           }),
           py::arg("start_day"), py::arg("end_day"), py::arg("multiplier"))
      .def_readwrite("start_day", &SynthEvent::start_day)
      .def_readwrite("end_day", &SynthEvent::end_day)
      .def_readwrite("multiplier", &SynthEvent::multiplier);

  py::class_<SynthConfig>(m, "SynthConfig")
      .def(py::init<>())
      .def_readwrite("n_nodes", &SynthConfig::n_nodes)
      .def_readwrite("n_days", &SynthConfig::n_days)
      .def_readwrite("base_edges_per_day", &SynthConfig::base_edges_per_day)
      .def_readwrite("weekday_factors", &SynthConfig::weekday_factors)
      .def_readwrite("events", &SynthConfig::events)
      .def_readwrite("seed", &SynthConfig::seed);

  py::class_<SynthResult>(m, "SynthResult")
      .def_readonly("stream", &SynthResult::stream)
      .def_readonly("day_labels", &SynthResult::day_labels);

  m.def("truth_labels", &truth_labels, py::arg("config"));
  m.def("generate_stream", &generate_stream, py::arg("config"));

  py::class_<EventReport>(m, "EventReport")
      .def_readonly("index", &EventReport::index)
      .def_readonly("start_day", &EventReport::start_day)
      .def_readonly("end_day", &EventReport::end_day)
      .def_readonly("multiplier", &EventReport::multiplier)
      .def_readonly("modal_state", &EventReport::modal_state)
      .def_readonly("purity", &EventReport::purity)
      .def_readonly("distinct_from_baseline", &EventReport::distinct_from_baseline);

  py::class_<PairDistinct>(m, "PairDistinct")
      .def_readonly("event_a", &PairDistinct::event_a)
      .def_readonly("event_b", &PairDistinct::event_b)
      .def_readonly("distinct", &PairDistinct::distinct);

  py::class_<DetectionReport>(m, "DetectionReport")
      .def_readonly("baseline_modal_state", &DetectionReport::baseline_modal_state)
      .def_readonly("events", &DetectionReport::events)
      .def_readonly("pairwise", &DetectionReport::pairwise)
      .def_readonly("all_events_distinct_from_baseline",
                    &DetectionReport::all_events_distinct_from_baseline)
      .def_readonly("all_pairs_distinct", &DetectionReport::all_pairs_distinct);

  m.def(
      "evaluate_detection",
      [](const std::vector<int>& labels, const std::vector<std::string>& truth,
         const std::vector<SynthEvent>& events) {
        return evaluate_detection(labels, truth, events);
      },
      py::arg("labels"), py::arg("truth"), py::arg("events"));

  py::enum_<SnapshotModel>(m, "SnapshotModel")
      .value("DISCRETE", SnapshotModel::Discrete)
      .value("PROB", SnapshotModel::Prob);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("input", &RunConfig::input)
      .def_readwrite("model", &RunConfig::model)
      .def_readwrite("delta_days", &RunConfig::delta_days)
      .def_readwrite("tau_days", &RunConfig::tau_days)
      .def_readwrite("cutoff", &RunConfig::cutoff)
      .def_readwrite("k", &RunConfig::k)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("restarts", &RunConfig::restarts)
      .def_readwrite("cluster_on_detrended", &RunConfig::cluster_on_detrended)
      .def_readwrite("standardize", &RunConfig::standardize)
      .def_readwrite("degree_denominator", &RunConfig::degree_denominator)
      .def_readwrite("out_dir", &RunConfig::out_dir)
      .def_readwrite("dump_snapshots", &RunConfig::dump_snapshots);

  py::class_<PipelineResult>(m, "PipelineResult")
      .def_readonly("n_timesteps", &PipelineResult::n_timesteps)
      .def_readonly("model", &PipelineResult::model)
      .def_readonly("transitions", &PipelineResult::transitions)
      .def_readonly("features", &PipelineResult::features);

  m.def("run_pipeline", &run_pipeline, py::arg("config"),
        "Write features.csv, states.csv, transitions.json, model.json to config.out_dir");
  m.def("run_synth", &run_synth, py::arg("config_file"), py::arg("edges_out"),
        py::arg("truth_out"));
  m.def("write_edges_csv", &write_edges_csv, py::arg("file"), py::arg("stream"));
  m.def(
      "run_eval",
      [](const std::filesystem::path& states, const std::filesystem::path& truth,
         const std::filesystem::path& config) {
        std::ostringstream os;
        DetectionReport report = run_eval(states, truth, config, os);
        return py::make_tuple(report, os.str());
      },
      py::arg("states_file"), py::arg("truth_file"), py::arg("config_file"),
      "Returns (DetectionReport, report_json)");

  m.def("fmt_g12", &fmt_g12, py::arg("x"));
  m.def("round_g12", &round_g12, py::arg("x"));
}
