#include "crosswalk/cli.hpp"

#include <CLI11.hpp>
#include <functional>

#include "crosswalk/engine.hpp"
#include "crosswalk/io.hpp"
#include "crosswalk/json_util.hpp"
#include "crosswalk/mapgen.hpp"
#include "crosswalk/provenance.hpp"
#include "crosswalk/survey.hpp"
#include "crosswalk/tabular.hpp"
#include "crosswalk/yarrrml.hpp"

namespace crosswalk::cli {

namespace fs = std::filesystem;

std::string_view version() { return "0.3.0"; }

fs::path provenance_path(const fs::path& output) {
  fs::path p = output;
  if (p.extension() == ".nt") p.replace_extension();
  p += ".prov.nt";
  return p;
}

PipelineConfig parse_pipeline_config(std::string_view json_text, const fs::path& base_dir) {
  auto doc = json_util::parse(json_text);
  if (!doc.is_object()) throw FormatError("pipeline config must be a JSON object");
  json_util::ObjectReader r(doc, "pipeline config");
  auto path = [&](const std::string& text) {
    fs::path p(text);
    return p.is_absolute() ? p : base_dir / p;
  };
  auto existing = [&](const std::string& key) {
    auto p = path(r.required_string(key));
    if (!fs::exists(p)) throw FormatError("pipeline config: " + key + " file not found: " + p.string());
    return p;
  };
  PipelineConfig c;
  c.schema = existing("schema");
  c.questionnaire = existing("questionnaire");
  c.responses = existing("responses");
  c.defaults = existing("defaults");
  c.pack = existing("pack");
  const auto& sources = r.required_object("sources");
  for (const auto& [name, p] : sources.items()) {
    if (!p.is_string()) throw FormatError("pipeline config: source \"" + name + "\" must be a path");
    auto full = path(p.get<std::string>());
    if (!fs::exists(full)) throw FormatError("pipeline config: source file not found: " + full.string());
    c.sources[name] = full;
  }
  c.output = path(r.required_string("output"));
  if (auto w = r.optional_string("workdir"))
    c.workdir = path(*w);
  else
    c.workdir = c.output.parent_path();
  if (auto l = r.optional_string("lookup")) {
    c.lookup = path(*l);
    if (!fs::exists(*c.lookup)) throw FormatError("pipeline config: lookup file not found: " + c.lookup->string());
  }
  c.agent = r.optional_string("agent");
  c.stable = r.optional_bool("stable").value_or(true);
  c.emit_provenance = r.optional_bool("emit_provenance").value_or(true);
  c.from_limesurvey = r.optional_bool("from_limesurvey").value_or(false);
  r.finish_strict();
  return c;
}

namespace {

struct CsvOptions {
  std::string delimiter = ",";
  std::string encoding = "UTF-8";
  bool no_header = false;

  tabular::CsvDialect dialect() const {
    if (delimiter.size() != 1) throw FormatError("delimiter must be a single character");
    return tabular::CsvDialect(delimiter[0], '"', encoding, !no_header);
  }
};

struct ValidateArgs {
  std::string csv;
  std::string schema;
  bool json = false;
  CsvOptions csv_options;
};

struct DecisionsArgs {
  std::string questionnaire;
  std::string responses;
  std::string defaults;
  std::string out;
  bool from_limesurvey = false;
};

struct CompileArgs {
  std::string decisions;
  std::string schema;
  std::string pack;
  std::string out;
};

struct TranslateArgs {
  std::string input;
  std::string out;
};

struct RunArgs {
  std::string mapping;
  std::vector<std::string> sources;  // name=path
  std::string out;
  bool stable = true;
  bool provenance = true;
  std::string lookup;
  std::string agent;
  std::string decisions;  // recorded in provenance only
  CsvOptions csv_options;
};

void print_warnings(const Diagnostics& d, std::ostream& err) {
  for (const auto& w : d.warnings) err << "warning: " << w << "\n";
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ExecutionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_execution;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }
}

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Diagnostics diag;
    auto schema = tabular::parse_schema_json(read_file(a.schema), &diag);
    auto data = tabular::load_csv(read_file(a.csv), a.csv_options.dialect(), schema.id());
    print_warnings(diag, err);
    auto report = tabular::validate_schema(data, schema);
    out << (a.json ? tabular::report_to_json(report) : tabular::report_to_text(report));
    return report.ok() ? exit_ok : exit_invalid;
  });
}

std::set<std::string> builtin_function_names() {
  engine::FunctionRegistry registry;
  engine::register_builtin_functions(registry);
  auto names = registry.names();
  return {names.begin(), names.end()};
}

int cmd_decisions(const DecisionsArgs& a, std::ostream& out, std::ostream& err) {
  (void)out;
  return guarded(err, [&] {
    Diagnostics diag;
    auto questionnaire = survey::parse_questionnaire(read_file(a.questionnaire), &diag);
    auto raw = read_file(a.responses);
    if (a.from_limesurvey) raw = survey::limesurvey_to_canonical(raw, questionnaire);
    auto responses = survey::parse_responses(raw, questionnaire);
    auto defaults = survey::parse_decisions(read_file(a.defaults));
    auto decisions = survey::derive_decisions(responses, questionnaire, defaults, builtin_function_names());
    print_warnings(diag, err);
    write_file(a.out, survey::decisions_to_json(decisions));
    auto feedback = survey::feedback_report(responses, questionnaire);
    if (!feedback.empty()) {
      err << "feedback for review:\n";
      for (const auto& item : feedback) err << "  [" << item.code << "] " << item.text << "\n";
    }
    return exit_ok;
  });
}

int cmd_compile(const CompileArgs& a, std::ostream& out, std::ostream& err) {
  (void)out;
  return guarded(err, [&] {
    Diagnostics diag;
    auto decisions = survey::parse_decisions(read_file(a.decisions));
    auto schema = tabular::parse_schema_json(read_file(a.schema), &diag);
    auto pack = mapgen::parse_template_pack(read_file(a.pack), &diag);
    auto known = builtin_function_names();
    auto doc = mapgen::compile_mappings(decisions, schema, pack, &diag, &known);
    print_warnings(diag, err);
    write_file(a.out, yarrrml::serialize_yarrrml(doc));
    return exit_ok;
  });
}

int cmd_translate(const TranslateArgs& a, std::ostream& out, std::ostream& err) {
  (void)out;
  return guarded(err, [&] {
    auto doc = yarrrml::parse_yarrrml(read_file(a.input));
    write_file(a.out, yarrrml::serialize_rml_turtle(yarrrml::to_rml(doc)));
    return exit_ok;
  });
}

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  (void)out;
  return guarded(err, [&] {
    auto started = provenance::Clock::now();
    std::vector<provenance::InputDigest> inputs;

    auto mapping_text = read_file(a.mapping);
    auto graph = engine::parse_rml_turtle(mapping_text);
    inputs.push_back({provenance::InputRole::mapping, a.mapping, provenance::sha256_hex(mapping_text)});

    auto dialect = a.csv_options.dialect();
    engine::Sources sources;
    std::map<std::string, std::string> bindings;
    for (const auto& s : a.sources) {
      auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
        throw FormatError("--source expects name=path, got \"" + s + "\"");
      auto name = s.substr(0, eq);
      if (!bindings.emplace(name, s.substr(eq + 1)).second)
        throw FormatError("source \"" + name + "\" bound twice");
    }
    for (const auto& [name, path] : bindings) {
      auto bytes = read_file(path);
      sources.emplace(name, tabular::load_csv(bytes, dialect, name));
      inputs.push_back({provenance::InputRole::source, name + "=" + path, provenance::sha256_hex(bytes)});
    }
    if (!a.decisions.empty())
      inputs.push_back(
          {provenance::InputRole::decisions, a.decisions, provenance::sha256_hex(read_file(a.decisions))});

    engine::FunctionRegistry registry;
    engine::register_builtin_functions(
        registry, a.lookup.empty() ? engine::default_aat_table() : engine::parse_lookup_table(read_file(a.lookup)));

    auto triples = engine::execute(graph, sources, registry);
    auto text = engine::serialize_ntriples(triples, a.stable);
    write_file(a.out, text);

    auto prov_file = provenance_path(a.out);
    if (a.provenance) {
      provenance::RunRecord record;
      record.started = started;
      record.ended = provenance::Clock::now();
      record.tool_version = std::string(version());
      record.inputs = std::move(inputs);
      record.output_label = a.out;
      record.output_digest = provenance::sha256_hex(text);
      record.run_iri = provenance::make_run_iri(record.output_digest, started);
      if (!a.agent.empty()) record.agent = a.agent;
      write_file(prov_file, engine::serialize_ntriples(provenance::emit_provenance(record), true));
    }
    return exit_ok;
  });
}

int cmd_pipeline(const std::string& config_path, std::ostream& out, std::ostream& err) {
  PipelineConfig c;
  int code = guarded(err, [&] {
    c = parse_pipeline_config(read_file(config_path), fs::path(config_path).parent_path());
    return exit_ok;
  });
  if (code != exit_ok) return code;

  auto decisions = c.workdir / "decisions.json";
  auto yarrrml_file = c.workdir / "mapping.yml";
  auto turtle_file = c.workdir / "mapping.ttl";
  std::error_code ec;
  for (const auto& stale : {decisions, yarrrml_file, turtle_file, c.output, provenance_path(c.output)})
    fs::remove(stale, ec);

  auto stage = [&](const char* name, int result) {
    if (result != exit_ok) err << "pipeline halted at stage \"" << name << "\"\n";
    return result;
  };
  if (int r = stage("decisions", cmd_decisions({c.questionnaire.string(), c.responses.string(), c.defaults.string(),
                                                decisions.string(), c.from_limesurvey},
                                               out, err)))
    return r;
  if (int r = stage("compile",
                    cmd_compile({decisions.string(), c.schema.string(), c.pack.string(), yarrrml_file.string()}, out,
                                err)))
    return r;
  if (int r = stage("translate", cmd_translate({yarrrml_file.string(), turtle_file.string()}, out, err))) return r;

  RunArgs run;
  run.mapping = turtle_file.string();
  for (const auto& [name, path] : c.sources) run.sources.push_back(name + "=" + path.string());
  run.out = c.output.string();
  run.stable = c.stable;
  run.provenance = c.emit_provenance;
  if (c.lookup) run.lookup = c.lookup->string();
  if (c.agent) run.agent = *c.agent;
  run.decisions = decisions.string();
  return stage("run", cmd_run(run, out, err));
}

void add_csv_options(CLI::App* cmd, CsvOptions& o) {
  cmd->add_option("--delimiter", o.delimiter, "CSV field delimiter")->capture_default_str();
  cmd->add_option("--encoding", o.encoding, "CSV encoding: UTF-8, ISO-8859-1 or US-ASCII")->capture_default_str();
  cmd->add_flag("--no-header", o.no_header, "first CSV record is data, columns are column1..N");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CSV to RDF crosswalk driven by survey decisions", "crosswalk"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "check a CSV file against a table schema");
  validate->add_option("csv", va.csv, "CSV file")->required();
  validate->add_option("schema", va.schema, "table schema JSON")->required();
  validate->add_flag("--json", va.json, "print the report as JSON");
  add_csv_options(validate, va.csv_options);

  DecisionsArgs da;
  auto* decisions = app.add_subcommand("decisions", "derive a decision set from questionnaire responses");
  decisions->add_option("--questionnaire", da.questionnaire)->required();
  decisions->add_option("--responses", da.responses)->required();
  decisions->add_option("--defaults", da.defaults)->required();
  decisions->add_option("--out", da.out)->required();
  decisions->add_flag("--from-limesurvey", da.from_limesurvey, "responses are a LimeSurvey JSON export");

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "compile YARRRML from decisions, schema and template pack");
  compile->add_option("--decisions", ca.decisions)->required();
  compile->add_option("--schema", ca.schema)->required();
  compile->add_option("--pack", ca.pack)->required();
  compile->add_option("--out", ca.out)->required();

  TranslateArgs ta;
  auto* translate = app.add_subcommand("translate", "translate YARRRML into RML Turtle");
  translate->add_option("yarrrml", ta.input)->required();
  translate->add_option("--out", ta.out)->required();

  RunArgs ra;
  auto* run = app.add_subcommand("run", "execute an RML mapping over CSV sources");
  run->add_option("--mapping", ra.mapping, "RML Turtle file")->required();
  run->add_option("--source", ra.sources, "logical source binding name=path")->required();
  run->add_option("--out", ra.out, "N-Triples output")->required();
  run->add_flag("--stable,!--no-stable", ra.stable, "sort and deduplicate output lines (default on)");
  run->add_flag("--provenance,!--no-provenance", ra.provenance, "write <out>.prov.nt (default on)");
  run->add_option("--lookup", ra.lookup, "AAT lookup table JSON");
  run->add_option("--agent", ra.agent, "person responsible for the run");
  run->add_option("--decisions", ra.decisions, "decision set to record in provenance");
  add_csv_options(run, ra.csv_options);

  std::string config;
  auto* pipeline = app.add_subcommand("pipeline", "run decisions, compile, translate and run from a config file");
  pipeline->add_option("config", config, "pipeline config JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config;
  }

  if (*validate) return cmd_validate(va, out, err);
  if (*decisions) return cmd_decisions(da, out, err);
  if (*compile) return cmd_compile(ca, out, err);
  if (*translate) return cmd_translate(ta, out, err);
  if (*run) return cmd_run(ra, out, err);
  if (*pipeline) return cmd_pipeline(config, out, err);
  return exit_config;
}

}  // namespace crosswalk::cli
