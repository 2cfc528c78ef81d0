// Copyright 2026 The FtF Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ftf: command-line entry point. Every command is a thin wrapper around one
// library call; failures print a single JSON line on stderr and exit non-zero.

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ftf/agreement.h"
#include "ftf/annotation_http.h"
#include "ftf/annotation_service.h"
#include "ftf/dataset_io.h"
#include "ftf/error_analysis.h"
#include "ftf/metrics.h"
#include "ftf/model_runner.h"
#include "ftf/promptgen.h"
#include "ftf/report.h"

#ifndef FTF_VERSION
#define FTF_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace ftf;

namespace {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2, kInput = 3, kRemote = 4 };

// A failure that already carries its exit code and error kind.
struct CliError : std::runtime_error {
  CliError(int code, std::string kind, const std::string& message)
      : std::runtime_error(message), code(code), kind(std::move(kind)) {}
  int code;
  std::string kind;
};

struct Globals {
  std::string out;
  std::string format = "table";
  std::string inventory;
};

const Inventory& LoadInventory(const Globals& g) {
  static std::unique_ptr<Inventory> custom;
  if (g.inventory.empty()) return Inventory::Default();
  custom = std::make_unique<Inventory>(Inventory::FromFile(g.inventory));
  return *custom;
}

void Emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const fs::path path(g.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw CliError(kInput, "IoError", "cannot write " + g.out);
}

bool WantJson(const Globals& g) {
  if (g.format == "json") return true;
  if (g.format == "table") return false;
  throw CliError(kUsage, "UsageError", "--format must be table or json");
}

std::string JsonText(const OrderedJson& j) { return j.dump(2) + "\n"; }

fs::path RequireFile(const fs::path& p) {
  if (!fs::is_regular_file(p)) throw CliError(kInput, "FileNotFound", p.string() + " not found");
  return p;
}

// ---- commands

int Validate(const Globals& g, const std::string& data_dir) {
  const fs::path dir(data_dir);
  const auto arguments = LoadArguments(RequireFile(dir / "arguments.jsonl"));
  std::vector<AnnotationRecord> annotations;
  for (const char* name : {"annotations.jsonl", "gold.jsonl"}) {
    if (!fs::exists(dir / name)) continue;
    auto more = LoadAnnotations(dir / name);
    annotations.insert(annotations.end(), more.begin(), more.end());
  }
  // A service data dir: check the current fold of its journal.
  if (fs::exists(dir / "journal.jsonl")) {
    const ServiceState state =
        AnnotationService::Replay(AnnotationService::ReadJournal(dir / "journal.jsonl"));
    for (const auto& [key, record] : state.annotations) annotations.push_back(record);
    for (const auto& [id, record] : state.adjudications) annotations.push_back(record);
  }
  const DatasetReport report = ValidateDataset(arguments, annotations, LoadInventory(g));
  Emit(g, WantJson(g) ? JsonText(ToJson(report)) : FormatDatasetReport(report));
  return report.ok() ? kOk : kFailed;
}

int Eval(const Globals& g, const std::string& gold_path, const std::string& pred_path,
         const std::string& overlap, const std::string& label) {
  const auto gold = LoadAnnotations(RequireFile(gold_path));
  const auto preds = LoadPredictions(RequireFile(pred_path));
  EvalOptions options;
  options.overlap = ParseOverlapMode(overlap);
  const EvalReport report = Evaluate(preds, gold, options);
  std::string model = label;
  if (model.empty() && !preds.empty()) model = preds.front().model_id;
  if (WantJson(g)) {
    OrderedJson j = ToJson(report);
    j["model_id"] = model;
    j["overlap_mode"] = ToString(options.overlap);
    Emit(g, JsonText(j));
  } else {
    Emit(g, FormatEvalTable(report, model));
  }
  return kOk;
}

int Agreement(const Globals& g, const std::string& path, bool partial) {
  const auto annotations = LoadAnnotations(RequireFile(path));
  const AgreementReport report =
      partial ? MakeOverlapAgreementReport(annotations) : MakeAgreementReport(annotations);
  Emit(g, WantJson(g) ? JsonText(ToJson(report)) : FormatAgreementTable(report));
  return kOk;
}

int CoverageCmd(const Globals& g, const std::string& path) {
  const CoverageReport report = Coverage(LoadAnnotations(RequireFile(path)));
  Emit(g, WantJson(g) ? JsonText(ToJson(report)) : FormatCoverageTable(report));
  return kOk;
}

struct PoolFlags {
  std::string arguments;
  std::string annotations;
};

std::vector<Example> LoadPool(const PoolFlags& p, int shots) {
  if (shots == 0) return {};
  if (p.arguments.empty() || p.annotations.empty()) {
    throw CliError(kUsage, "UsageError",
                   "few-shot prompts need --pool-arguments and --pool-annotations");
  }
  const auto args = LoadArguments(RequireFile(p.arguments));
  const auto anns = LoadAnnotations(RequireFile(p.annotations));
  return MakeExamplePool(args, anns);
}

const StyleLibrary& Styles(const std::string& dir) {
  static std::unique_ptr<StyleLibrary> custom;
  if (dir.empty()) return StyleLibrary::Default();
  custom = std::make_unique<StyleLibrary>(StyleLibrary::FromDirectory(dir));
  return *custom;
}

int PromptBuild(const Globals& g, const std::string& type, const std::string& style, int shots,
                std::uint64_t seed, const PoolFlags& pool_flags, const std::string& query_id,
                const std::string& query_text, const std::string& styles_dir) {
  PromptConfig config;
  config.fallacy_type = ParseFallacyType(type);
  config.style = ParsePromptStyle(style);
  config.shots = shots;
  config.seed = seed;
  const auto pool = LoadPool(pool_flags, shots);
  const Inventory& inventory = LoadInventory(g);

  ArgumentRecord query;
  query.fallacy_type = config.fallacy_type;
  if (!query_id.empty()) {
    bool found = false;
    for (const auto& a : LoadArguments(RequireFile(pool_flags.arguments))) {
      if (a.id == query_id) {
        query = a;
        found = true;
      }
    }
    if (!found) throw UnknownArgument(query_id);
  } else {
    query.id = "query";
    // Without a query the placeholder stays in place for later filling.
    query.text = query_text.empty() ? "{query}" : query_text;
  }
  const auto shots_drawn = SampleShots(pool, config.fallacy_type, shots, seed, inventory);
  const PromptDocument doc = BuildPrompt(config, shots_drawn, query, Styles(styles_dir), inventory);
  if (WantJson(g)) {
    OrderedJson sections = OrderedJson::array();
    for (const auto& [section, text] : doc.sections) {
      sections.push_back({{"section", ToString(section)}, {"text", text}});
    }
    OrderedJson ids = OrderedJson::array();
    for (const auto& e : shots_drawn) ids.push_back(e.argument.id);
    Emit(g, JsonText({{"fallacy_type", ToString(config.fallacy_type)},
                      {"style", ToString(config.style)},
                      {"shots", shots},
                      {"seed", seed},
                      {"shot_ids", ids},
                      {"sections", sections},
                      {"text", doc.text}}));
  } else {
    Emit(g, doc.text);
  }
  return kOk;
}

struct RunFlags {
  std::string model;
  std::string style = "NL2";
  int shots = 0;
  std::uint64_t seed = 0;
  std::string queries;
  std::string split;
  PoolFlags pool;
  std::string mock;
  std::string endpoint;
  std::string providers;
  std::string styles_dir;
  int parallelism = 1;
  double rate_limit = 0.0;
  double temperature = 0.0;
  int max_tokens = 256;
};

int Run(const Globals& g, const RunFlags& f) {
  if (g.out.empty()) throw CliError(kUsage, "UsageError", "ftf run needs --out <directory>");
  if (f.mock.empty() == f.endpoint.empty()) {
    throw CliError(kUsage, "UsageError", "pass exactly one of --mock and --endpoint");
  }
  auto queries = LoadArguments(RequireFile(f.queries));
  if (!f.split.empty()) {
    const Split split = ParseSplit(f.split);
    std::erase_if(queries, [&](const ArgumentRecord& a) { return a.split != split; });
  }
  const auto pool = LoadPool(f.pool, f.shots);

  std::unique_ptr<ChatEndpoint> endpoint;
  if (!f.mock.empty()) {
    endpoint = std::make_unique<MockEndpoint>(MockEndpoint::FromJsonl(RequireFile(f.mock)));
  } else {
    std::optional<fs::path> override_path;
    if (!f.providers.empty()) override_path = f.providers;
    const auto providers = LoadProviders(override_path);
    auto it = providers.find(f.endpoint);
    if (it == providers.end()) {
      throw CliError(kUsage, "UnknownEndpoint", "no provider named '" + f.endpoint + "'");
    }
    endpoint = std::make_unique<OpenAiCompatibleEndpoint>(it->second);
  }

  RunOptions options;
  options.model_id = f.model;
  options.style = ParsePromptStyle(f.style);
  options.shots = f.shots;
  options.seed = f.seed;
  options.params.temperature = f.temperature;
  options.params.max_output_tokens = f.max_tokens;
  options.parallelism = f.parallelism;
  options.rate_limit = f.rate_limit;
  if (const char* cache = std::getenv("FTF_CACHE_DIR"); cache && *cache) {
    options.cache_dir = fs::path(cache);
  }
  options.styles = &Styles(f.styles_dir);
  options.inventory = &LoadInventory(g);

  const RunResult result = RunEval(queries, pool, *endpoint, options);

  const fs::path out(g.out);
  fs::create_directories(out);
  {
    std::ofstream preds(out / "predictions.jsonl", std::ios::binary | std::ios::trunc);
    WritePredictions(preds, result.predictions);
  }
  OrderedJson manifest = ToJson(result.manifest);
  manifest["fingerprint"] = result.manifest.Fingerprint();
  {
    std::ofstream m(out / "manifest.json", std::ios::binary | std::ios::trunc);
    m << manifest.dump(2) << "\n";
  }
  std::cerr << OrderedJson{{"requests", result.stats.requests},
                           {"cache_hits", result.stats.cache_hits},
                           {"retries", result.stats.retries},
                           {"failures", result.stats.failures}}
                   .dump()
            << "\n";
  return kOk;
}

int AnalyzeErrors(const Globals& g, const std::string& gold_path, const std::string& pred_path,
                  const std::string& overlap, const std::string& arguments_path, bool audit) {
  const auto gold = LoadAnnotations(RequireFile(gold_path));
  const auto preds = LoadPredictions(RequireFile(pred_path));
  std::vector<ArgumentRecord> arguments;
  if (!arguments_path.empty()) arguments = LoadArguments(RequireFile(arguments_path));
  const ErrorReport report = MakeErrorReport(preds, gold, ParseOverlapMode(overlap));
  if (WantJson(g)) {
    Emit(g, JsonText(ToJson(report)));
  } else {
    std::string text = FormatErrorTable(report);
    if (audit) text += "\n" + AuditListing(report, arguments);
    Emit(g, text);
  }
  return kOk;
}

std::vector<std::string> SplitList(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream in(csv);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int Export(const Globals& g, const std::string& data_dir, const std::string& annotators,
           std::optional<std::uint64_t> at, const std::string& policy) {
  if (g.out.empty()) throw CliError(kUsage, "UsageError", "ftf export needs --out <directory>");
  ServiceOptions options;
  options.data_dir = data_dir;
  options.annotators = SplitList(annotators);
  options.snapshot_every = 0;
  options.inventory = &LoadInventory(g);
  AnnotationService service(options);
  const DatasetExport ex = service.Export(at, ParseExportPolicy(policy));
  const fs::path out(g.out);
  fs::create_directories(out);
  std::ofstream a(out / "arguments.jsonl", std::ios::binary | std::ios::trunc);
  WriteArguments(a, ex.arguments);
  std::ofstream n(out / "annotations.jsonl", std::ios::binary | std::ios::trunc);
  WriteAnnotations(n, ex.annotations);
  return kOk;
}

ApiServer* g_server = nullptr;

int Serve(const Globals& g, const std::string& data_dir, const std::string& host, int port,
          const std::string& annotators, const std::string& ui_dir) {
  ServiceOptions options;
  options.data_dir = data_dir;
  options.annotators = SplitList(annotators);
  if (options.annotators.empty()) {
    throw CliError(kUsage, "UsageError", "--annotators needs at least one id");
  }
  options.inventory = &LoadInventory(g);
  AnnotationService service(options);
  ApiServerOptions api_options;
  if (!ui_dir.empty()) api_options.static_dir = fs::path(ui_dir);
  ApiServer server(service, api_options);
  const int bound = server.Bind(host, port);
  if (bound < 0) {
    throw CliError(kInput, "BindError", "cannot listen on " + host + ":" + std::to_string(port));
  }
  std::cerr << OrderedJson{{"listening", host + ":" + std::to_string(bound)},
                           {"journal_length", service.journal_length()}}
                   .dump()
            << std::endl;
  g_server = &server;
  std::signal(SIGINT, [](int) { if (g_server) g_server->Stop(); });
  std::signal(SIGTERM, [](int) { if (g_server) g_server->Stop(); });
  server.Listen();
  g_server = nullptr;
  service.WriteSnapshot();
  return kOk;
}

// ---- error reporting

int Report(int code, std::string_view kind, const std::string& message,
           OrderedJson extra = OrderedJson::object()) {
  OrderedJson j{{"error", kind}, {"message", message}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  std::cerr << j.dump() << std::endl;
  return code;
}

int Dispatch(const std::function<int()>& body) {
  try {
    return body();
  } catch (const CliError& e) {
    return Report(e.code, e.kind, e.what());
  } catch (const RecordError& e) {
    return Report(kInput, "RecordError", e.what(),
                  {{"kind", e.kind_name()}, {"line", e.line()}});
  } catch (const ValidationFailed& e) {
    return Report(kFailed, "ValidationFailed", e.what(), {{"report", ToJson(e.report())}});
  } catch (const JournalCorrupt& e) {
    return Report(kInput, "JournalCorrupt", e.what());
  } catch (const AuthError& e) {
    return Report(kRemote, "AuthError", e.what());
  } catch (const TransportError& e) {
    return Report(kRemote, "TransportError", e.what());
  } catch (const IncompleteMockTable& e) {
    return Report(kInput, "IncompleteMockTable", e.what());
  } catch (const InsufficientData& e) {
    return Report(kFailed, "InsufficientData", e.what());
  } catch (const EmptyInput& e) {
    return Report(kFailed, "EmptyInput", e.what());
  } catch (const AmbiguousInput& e) {
    return Report(kInput, "AmbiguousInput", e.what());
  } catch (const InsufficientExamples& e) {
    return Report(kFailed, "InsufficientExamples", e.what());
  } catch (const UnknownValueError& e) {
    return Report(kUsage, "UnknownValue", e.what());
  } catch (const InventoryError& e) {
    return Report(kInput, "InventoryError", e.what());
  } catch (const std::invalid_argument& e) {
    return Report(kFailed, "InvalidArgument", e.what());
  } catch (const std::exception& e) {
    return Report(kFailed, "Error", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fallacy-template toolkit: annotation, prompting and scoring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", [] {
    return std::string("ftf ") + FTF_VERSION + "\ninventory " + Inventory::Default().version();
  });

  Globals g;
  auto add_globals = [&](CLI::App* cmd, bool with_format = true) {
    cmd->add_option("--out", g.out, "Output file or directory (default stdout)");
    if (with_format) {
      cmd->add_option("--format", g.format, "table or json")->capture_default_str();
    }
    cmd->add_option("--inventory", g.inventory, "Template inventory JSON (default bundled)");
  };

  std::function<int()> action;

  // validate
  std::string data_dir;
  auto* validate = app.add_subcommand("validate", "Check a dataset directory");
  validate->add_option("data-dir", data_dir, "Directory with arguments.jsonl")->required();
  add_globals(validate);
  validate->callback([&] { action = [&] { return Validate(g, data_dir); }; });

  // eval
  std::string gold, pred, overlap = "recall", label;
  auto* eval = app.add_subcommand("eval", "Score predictions against gold annotations");
  eval->add_option("--gold", gold)->required();
  eval->add_option("--pred", pred)->required();
  eval->add_option("--overlap-mode", overlap, "recall or jaccard")->capture_default_str();
  eval->add_option("--model-label", label, "Model name in the table header");
  add_globals(eval);
  eval->callback([&] { action = [&] { return Eval(g, gold, pred, overlap, label); }; });

  // agreement
  std::string annotations;
  bool partial = false;
  auto* agreement = app.add_subcommand("agreement", "Krippendorff's alpha and Gwet's AC1");
  agreement->add_option("--annotations", annotations)->required();
  agreement->add_flag("--partial", partial, "Use only items labelled by two or more annotators");
  add_globals(agreement);
  agreement->callback([&] { action = [&] { return Agreement(g, annotations, partial); }; });

  // coverage
  auto* coverage = app.add_subcommand("coverage", "Share of non-catch-all labels");
  coverage->add_option("--annotations", annotations)->required();
  add_globals(coverage);
  coverage->callback([&] { action = [&] { return CoverageCmd(g, annotations); }; });

  // prompt build
  std::string type, style = "NL2", query_id, query_text, styles_dir;
  int shots = 0;
  std::uint64_t seed = 0;
  PoolFlags pool;
  auto* prompt = app.add_subcommand("prompt", "Prompt documents");
  prompt->require_subcommand(1);
  auto* build = prompt->add_subcommand("build", "Render one prompt");
  build->add_option("--type", type)->required();
  build->add_option("--style", style, "NL1, NL2 or PL")->capture_default_str();
  build->add_option("--shots", shots)->capture_default_str()->check(CLI::NonNegativeNumber);
  build->add_option("--seed", seed)->capture_default_str();
  build->add_option("--pool-arguments", pool.arguments, "Arguments for the shot pool");
  build->add_option("--pool-annotations", pool.annotations, "Annotations for the shot pool");
  build->add_option("--query", query_id, "Argument id from --pool-arguments");
  build->add_option("--query-text", query_text, "Literal query text");
  build->add_option("--styles", styles_dir, "Directory of style documents");
  add_globals(build);
  build->callback([&] {
    action = [&] {
      return PromptBuild(g, type, style, shots, seed, pool, query_id, query_text, styles_dir);
    };
  });

  // run
  RunFlags rf;
  auto* run = app.add_subcommand("run", "Prompt a model over a query set");
  run->add_option("--model", rf.model)->required();
  run->add_option("--queries", rf.queries, "Arguments to label")->required();
  run->add_option("--split", rf.split, "Keep only this split of --queries");
  run->add_option("--style", rf.style)->capture_default_str();
  run->add_option("--shots", rf.shots)->capture_default_str()->check(CLI::NonNegativeNumber);
  run->add_option("--seed", rf.seed)->capture_default_str();
  run->add_option("--pool-arguments", rf.pool.arguments);
  run->add_option("--pool-annotations", rf.pool.annotations);
  run->add_option("--mock", rf.mock, "JSONL table of canned outputs keyed by argument_id");
  run->add_option("--endpoint", rf.endpoint, "Provider name (openai, together, local, ...)");
  run->add_option("--providers", rf.providers, "Provider registry override");
  run->add_option("--styles", rf.styles_dir);
  run->add_option("--parallelism", rf.parallelism)->capture_default_str()->check(CLI::PositiveNumber);
  run->add_option("--rate-limit", rf.rate_limit, "Requests per second, 0 = unlimited")
      ->capture_default_str();
  run->add_option("--temperature", rf.temperature)->capture_default_str();
  run->add_option("--max-tokens", rf.max_tokens)->capture_default_str();
  add_globals(run, false);
  run->callback([&] { action = [&] { return Run(g, rf); }; });

  // analyze-errors
  std::string error_overlap = "jaccard", error_args;
  bool audit = false;
  auto* errors = app.add_subcommand("analyze-errors", "Sort wrong predictions into categories");
  errors->add_option("--gold", gold)->required();
  errors->add_option("--pred", pred)->required();
  errors->add_option("--overlap-mode", error_overlap)->capture_default_str();
  errors->add_option("--arguments", error_args, "Argument texts for the audit listing");
  errors->add_flag("--audit", audit, "Append one block per wrong pair");
  add_globals(errors);
  errors->callback([&] {
    action = [&] { return AnalyzeErrors(g, gold, pred, error_overlap, error_args, audit); };
  });

  // export
  std::string annotators, policy = "annotators";
  std::optional<std::uint64_t> at;
  auto* exp = app.add_subcommand("export", "Write the dataset folded from a service journal");
  exp->add_option("--data-dir", data_dir)->required();
  exp->add_option("--at", at, "Journal prefix length (default: all)");
  exp->add_option("--policy", policy, "annotators or consensus")->capture_default_str();
  exp->add_option("--annotators", annotators, "Comma-separated annotator ids");
  add_globals(exp, false);
  exp->callback([&] { action = [&] { return Export(g, data_dir, annotators, at, policy); }; });

  // serve
  std::string host = "127.0.0.1", ui_dir;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the annotation service");
  serve->add_option("--data-dir", data_dir)->required();
  serve->add_option("--annotators", annotators, "Comma-separated annotator ids")->required();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--ui-dir", ui_dir, "Built UI assets to serve at /");
  add_globals(serve, false);
  serve->callback([&] {
    action = [&] { return Serve(g, data_dir, host, port, annotators, ui_dir); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return Report(kUsage, "UsageError", e.what());
  }
  return Dispatch(action);
}
