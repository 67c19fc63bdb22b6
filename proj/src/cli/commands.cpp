#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>

#include "seisdetect/cli.hpp"
#include "seisdetect/error.hpp"
#include "seisdetect/eval.hpp"
#include "seisdetect/features.hpp"
#include "seisdetect/seeds.hpp"
#include "seisdetect/waveform_io.hpp"

namespace seisdetect::cli {
namespace {

namespace fs = std::filesystem;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

RunConfig resolve(const Common& c) {
  RunConfig cfg = c.config.empty() ? parse_config("{}") : load_config(c.config);
  if (c.seed) cfg.master_seed = *c.seed;
  return cfg;
}

fs::path output(const Common& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return fs::path(c.out_dir) / name;
}

template <typename F>
void write_file(const fs::path& path, F&& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  body(out);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void require_role(const std::string& path, DataRole actual, DataRole wanted) {
  if (actual != wanted) {
    throw Error(ErrorCode::RoleViolation, path + " has role '" + std::string(to_string(actual)) + "', expected '" +
                                              std::string(to_string(wanted)) + "'");
  }
}

std::vector<std::string> profile_codes(const FeatureProfile& p) {
  if (!p.codes.empty()) return p.codes;
  if (p.profile == "canonical") return canonical_registry().list();
  if (p.profile == "surrogate") return surrogate_registry().list();
  return reproduction_registry().list();
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

void cmd_synth(const Common& c, std::ostream& out) {
  const auto cfg = resolve(c);
  SyntheticSpec spec = cfg.synth;
  spec.seed = derive_seed(cfg.master_seed, "synth");
  spec.n_noise += cfg.synth_pool;
  auto records = generate_synthetic(spec);
  // The trailing noise traces form the separate evaluation pool.
  WaveformFile main{DataRole::Unassigned, {}};
  WaveformFile pool{DataRole::Pool, {}};
  const std::size_t n_main = records.size() - static_cast<std::size_t>(cfg.synth_pool);
  for (std::size_t i = 0; i < records.size(); ++i) (i < n_main ? main : pool).records.push_back(std::move(records[i]));
  write_waveforms(output(c, "waveforms.jsonl"), main);
  out << "wrote " << main.records.size() << " records to " << output(c, "waveforms.jsonl").string() << '\n';
  if (cfg.synth_pool > 0) {
    write_waveforms(output(c, "pool.jsonl"), pool);
    out << "wrote " << pool.records.size() << " records to " << output(c, "pool.jsonl").string() << '\n';
  }
}

void cmd_split(const Common& c, const std::string& input, std::ostream& out) {
  const auto cfg = resolve(c);
  const auto file = read_waveforms(input);
  SplitSpec spec = cfg.split;
  spec.seed = derive_seed(cfg.master_seed, "split");
  const auto part = partition_by_event(file.records, spec);
  const std::pair<const char*, const std::vector<WaveformRecord>*> outputs[] = {
      {"train", &part.train}, {"validation", &part.validation}, {"test", &part.test}};
  for (const auto& [name, recs] : outputs) {
    const auto path = output(c, std::string(name) + ".jsonl");
    write_waveforms(path, WaveformFile{parse_role(name), *recs});
    out << name << ": " << recs->size() << " records -> " << path.string() << '\n';
  }
}

void cmd_extract(const Common& c, const std::string& input, const std::string& features_from,
                 const std::string& name, std::ostream& out) {
  const auto cfg = resolve(c);
  const auto file = read_waveforms(input);
  if (file.records.empty()) throw Error(ErrorCode::DegenerateInput, input + " contains no records");
  const auto codes = features_from.empty() ? profile_codes(cfg.features) : read_selected_features(features_from);
  const auto processed = preprocess_all(file.records, cfg.preprocess);
  auto m = extract_matrix(processed, reproduction_registry(), codes);
  m.role = file.role;
  const auto path = output(c, (name.empty() ? stem_of(input) : name) + ".features.csv");
  write_feature_matrix(path, m);
  out << "extracted " << m.rows() << " x " << m.cols() << " -> " << path.string() << '\n';
}

void cmd_select(const Common& c, const std::string& train_path, const std::string& val_path, std::ostream& out) {
  const auto cfg = resolve(c);
  const auto train = read_feature_matrix(train_path);
  const auto val = read_feature_matrix(val_path);
  require_role(train_path, train.role, DataRole::Train);
  require_role(val_path, val.role, DataRole::Validation);
  SelectionReport rep;
  rep.config = cfg.ensemble;
  rep.config.seed = derive_seed(cfg.master_seed, "select");
  rep.rule = cfg.rule;
  for (const auto& code : cfg.base_set) {
    if (train.column(code)) rep.base_set.push_back(code);
  }
  rep.runs = run_ensemble(train, val, rep.config);
  const auto ties = best_models(rep.runs, rep.config.tie_tolerance);
  for (const auto& t : ties) rep.tie_set.push_back(t.run_id);
  rep.distribution = weight_distributions(ties);
  rep.selected = select_features(rep.distribution, rep.rule, rep.base_set);
  write_selection_report(output(c, "selection.json"), rep);
  write_file(output(c, "selection_weights.csv"), [&](std::ostream& o) { write_distribution_table(o, rep.distribution); });
  out << "tie-set " << ties.size() << " of " << rep.runs.size() << " runs; selected";
  for (const auto& s : rep.selected) out << ' ' << s;
  out << '\n';
}

void cmd_train(const Common& c, const std::string& train_path, const std::string& features_from, std::ostream& out) {
  const auto cfg = resolve(c);
  auto train_m = read_feature_matrix(train_path);
  require_role(train_path, train_m.role, DataRole::Train);
  if (!features_from.empty()) train_m = train_m.select_columns(read_selected_features(features_from));
  const auto params = standardize_fit(train_m);
  TrainOptions opt = cfg.train;
  opt.seed = derive_seed(cfg.master_seed, "train");
  auto model = train(standardize_apply(train_m, params), cfg.penalty, opt);
  model.threshold = cfg.threshold;
  model.standardization = params;
  const auto path = output(c, "model.json");
  write_model(path, model);
  out << "trained on " << train_m.rows() << " rows, " << model.nonzero_count() << "/" << model.codes.size()
      << " nonzero weights, " << (model.meta.converged ? "converged" : "not converged") << " after "
      << model.meta.iterations << " sweeps -> " << path.string() << '\n';
}

struct Sources {
  std::vector<NamedModel> models;
  std::vector<PredictionSource> predictions;
};

Sources load_sources(const std::vector<std::string>& models, const std::vector<std::string>& preds,
                     const std::vector<std::string>& ids) {
  Sources s;
  for (const auto& p : models) s.models.push_back({stem_of(p), read_model(p)});
  for (const auto& p : preds) s.predictions.push_back({stem_of(p), ingest_predictions(p, ids)});
  return s;
}

void cmd_eval(const Common& c, const std::string& features, const std::vector<std::string>& models,
              const std::vector<std::string>& preds, double level, std::ostream& out) {
  resolve(c);
  if (models.empty() && preds.empty()) throw Error(ErrorCode::InvalidConfig, "eval needs --model or --predictions");
  const auto data = read_feature_matrix(features);
  const auto src = load_sources(models, preds, data.trace_ids);
  std::vector<std::pair<std::string, std::vector<Label>>> all;
  for (const auto& m : src.models) all.emplace_back(m.name, classify(m.model, prepare_inputs(m.model, data)));
  for (const auto& p : src.predictions) {
    std::vector<Label> labels;
    for (const auto& id : data.trace_ids) labels.push_back(p.predictions.at(id));
    all.emplace_back(p.name, std::move(labels));
  }
  std::vector<EvalReport> reports;
  for (const auto& [name, pred] : all) reports.push_back(make_report(name, confusion(data.labels, pred)));
  std::vector<PairedTest> tests;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      tests.push_back({all[i].first, all[j].first, level, mcnemar_test(data.labels, all[i].second, all[j].second, level)});
    }
  }
  const auto path = output(c, "eval.json");
  write_eval_reports(path, reports, tests);
  for (const auto& r : reports) {
    out << r.source << ": MCC " << r.mcc << ", accuracy " << r.accuracy << " (tp " << r.matrix.tp << ", tn "
        << r.matrix.tn << ", fp " << r.matrix.fp << ", fn " << r.matrix.fn << ")\n";
  }
  for (const auto& t : tests) {
    out << t.source_a << " vs " << t.source_b << ": p = " << t.result.p_value
        << (t.result.significant ? " (significant)\n" : " (not significant)\n");
  }
}

void append_rows(FeatureMatrix& dst, const FeatureMatrix& src, Label keep) {
  const auto aligned = src.select_columns(dst.codes);
  for (std::size_t r = 0; r < aligned.rows(); ++r) {
    if (aligned.labels[r] == keep) dst.append(aligned.vector(r));
  }
}

void cmd_sweep(const Common& c, std::vector<std::string> positives, std::vector<std::string> pools,
               std::vector<std::string> models, std::vector<std::string> preds, std::ostream& out) {
  const auto cfg = resolve(c);
  if (positives.empty()) positives = cfg.sweep.positives;
  if (pools.empty()) pools = cfg.sweep.pools;
  if (models.empty()) models = cfg.sweep.models;
  if (preds.empty()) preds = cfg.sweep.predictions;
  if (positives.empty()) throw Error(ErrorCode::InvalidConfig, "sweep needs at least one --positives file");
  if (models.empty() && preds.empty()) throw Error(ErrorCode::InvalidConfig, "sweep needs --model or --predictions");

  // Event rows of the positives files are the positives; their noise rows
  // and every pool row form the noise pool.
  const auto first = read_feature_matrix(positives.front());
  FeatureMatrix pos, pool;
  pos.codes = pool.codes = first.codes;
  pos.role = pool.role = DataRole::Test;
  for (const auto& p : positives) {
    const auto m = p == positives.front() ? first : read_feature_matrix(p);
    append_rows(pos, m, Label::Event);
    append_rows(pool, m, Label::Noise);
  }
  for (const auto& p : pools) append_rows(pool, read_feature_matrix(p), Label::Noise);

  std::vector<std::string> ids = pos.trace_ids;
  ids.insert(ids.end(), pool.trace_ids.begin(), pool.trace_ids.end());
  const auto src = load_sources(models, preds, ids);
  RatioSpec spec = cfg.sweep.ratios;
  spec.seed = derive_seed(cfg.master_seed, "sweep");
  const auto res = sweep(src.models, src.predictions, pos, pool, spec);
  write_file(output(c, "sweep.txt"), [&](std::ostream& o) { write_sweep_text(o, res); });
  write_file(output(c, "sweep.csv"), [&](std::ostream& o) { write_sweep_csv(o, res); });
  write_file(output(c, "sweep_grid.csv"), [&](std::ostream& o) { write_sweep_grid(o, res); });
  write_file(output(c, "sweep.json"), [&](std::ostream& o) { write_sweep_json(o, res); });
  write_sweep_text(out, res);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-c,--config", c.config, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("-s,--seed", c.seed, "Override the master seed");
  sub->add_option("-o,--out-dir", c.out_dir, "Directory for output artifacts");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seismic event detection: preprocessing, feature extraction, sparse logistic models, benchmarks",
               "seisdetect"};
  app.require_subcommand(1);
  Common c;
  std::string input, name, features_from, train_path, val_path, features;
  std::vector<std::string> models, preds, positives, pools;
  double level = 0.05;

  auto* synth = app.add_subcommand("synth", "Generate a synthetic waveform corpus");
  add_common(synth, c);

  auto* split = app.add_subcommand("split", "Partition a waveform file into train/validation/test by event");
  add_common(split, c);
  split->add_option("-i,--input", input, "Waveform file")->required();

  auto* extract = app.add_subcommand("extract", "Preprocess waveforms and extract a feature matrix");
  add_common(extract, c);
  extract->add_option("-i,--input", input, "Waveform file")->required();
  extract->add_option("--features-from", features_from, "Selection report whose selected set to extract");
  extract->add_option("--name", name, "Output stem (default: input stem)");

  auto* select = app.add_subcommand("select", "Run the elastic-net ensemble and select features");
  add_common(select, c);
  select->add_option("--train", train_path, "Training feature matrix")->required();
  select->add_option("--validation", val_path, "Validation feature matrix")->required();

  auto* trn = app.add_subcommand("train", "Train an elastic-net logistic regression model");
  add_common(trn, c);
  trn->add_option("--train", train_path, "Training feature matrix")->required();
  trn->add_option("--features-from", features_from, "Selection report restricting the inputs");

  auto* ev = app.add_subcommand("eval", "Evaluate models and prediction files on a labeled feature matrix");
  add_common(ev, c);
  ev->add_option("--features", features, "Labeled feature matrix")->required();
  ev->add_option("--model", models, "Model file (repeatable)");
  ev->add_option("--predictions", preds, "Predictions CSV (repeatable)");
  ev->add_option("--level", level, "Significance level for the paired test");

  auto* sw = app.add_subcommand("sweep", "Evaluate sources across noise-to-event ratios");
  add_common(sw, c);
  sw->add_option("--positives", positives, "Feature matrix supplying event rows (repeatable)");
  sw->add_option("--pool", pools, "Feature matrix supplying extra noise rows (repeatable)");
  sw->add_option("--model", models, "Model file (repeatable)");
  sw->add_option("--predictions", preds, "Predictions CSV (repeatable)");

  std::vector<std::string> argv_store = args;
  argv_store.insert(argv_store.begin(), "seisdetect");
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*synth) cmd_synth(c, out);
    else if (*split) cmd_split(c, input, out);
    else if (*extract) cmd_extract(c, input, features_from, name, out);
    else if (*select) cmd_select(c, train_path, val_path, out);
    else if (*trn) cmd_train(c, train_path, features_from, out);
    else if (*ev) cmd_eval(c, features, models, preds, level, out);
    else if (*sw) cmd_sweep(c, positives, pools, models, preds, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace seisdetect::cli
