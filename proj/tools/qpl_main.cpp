// qpl: command-line front end for the QPL toolchain.
//
// Exit status: 0 success, 1 operational failure (JSON on stderr), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpl/align.hpp"
#include "qpl/client.hpp"
#include "qpl/compile.hpp"
#include "qpl/csv.hpp"
#include "qpl/database.hpp"
#include "qpl/encode.hpp"
#include "qpl/errors.hpp"
#include "qpl/harness.hpp"
#include "qpl/interp.hpp"
#include "qpl/parser.hpp"
#include "qpl/printer.hpp"
#include "qpl/prompt.hpp"
#include "qpl/report.hpp"
#include "qpl/sqlite_backend.hpp"
#include "qpl/validator.hpp"

namespace {

// Fails the command with exit status 1 and a structured stderr message.
struct Failure {
  nlohmann::json payload;
  int status = 1;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qpl::Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

qpl::QplPlan read_plan(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return qpl::parse(text);
  } catch (const qpl::SyntaxError& e) {
    throw Failure{{{"error", "syntax"},
                   {"file", path},
                   {"position", e.position()},
                   {"expected", e.expected()},
                   {"message", e.what()}}};
  }
}

void print_relation_csv(const std::vector<std::string>& columns, const std::vector<qpl::Row>& rows) {
  std::cout << qpl::csv_line(columns) << "\n";
  for (const auto& row : rows) {
    std::vector<std::string> fields;
    for (const auto& v : row) fields.push_back(qpl::is_null(v) ? "" : qpl::to_display(v));
    std::cout << qpl::csv_line(fields) << "\n";
  }
}

std::vector<std::string> read_qd(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return qpl::split_qd_steps(text);
  } catch (const qpl::MalformedResponse&) {
    return {};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query Plan Language toolchain"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML configuration file; flags override its values");

  std::string file, schema_path, db_dir, dialect_name = "sqlite";
  bool as_json = false;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a QPL file and print it canonically");
  parse_cmd->add_option("file", file, "QPL file, - for stdin")->required();
  parse_cmd->add_flag("--json", as_json, "Print the syntax tree as JSON");

  auto* check_cmd = app.add_subcommand("check", "Validate a plan against a schema");
  check_cmd->add_option("file", file, "QPL file")->required();
  check_cmd->add_option("--schema", schema_path, "Schema JSON")->required();

  auto* compile_cmd = app.add_subcommand("compile", "Compile a plan to CTE SQL");
  compile_cmd->add_option("file", file, "QPL file")->required();
  compile_cmd->add_option("--schema", schema_path, "Schema JSON")->required();
  compile_cmd->add_option("--dialect", dialect_name, "sqlite, sqlserver or minimal")
      ->check(CLI::IsMember({"sqlite", "sqlserver", "minimal"}));

  auto* run_cmd = app.add_subcommand("run", "Compile and execute a plan, printing CSV");
  run_cmd->add_option("file", file, "QPL file")->required();
  run_cmd->add_option("--db", db_dir, "Database directory (schema.json + CSV files)")->required();

  auto* interp_cmd = app.add_subcommand("interp", "Evaluate a plan with the reference interpreter");
  interp_cmd->add_option("file", file, "QPL file")->required();
  interp_cmd->add_option("--db", db_dir, "Database directory")->required();

  std::string gold_sql_path, qpl_path;
  auto* compare_cmd = app.add_subcommand("compare", "Compare a plan against a gold SQL query");
  compare_cmd->add_option("--gold-sql", gold_sql_path, "Gold SQL file")->required();
  compare_cmd->add_option("--qpl", qpl_path, "QPL file")->required();
  compare_cmd->add_option("--db", db_dir, "Database directory")->required();

  std::string style = "simple", question;
  bool model_input_flag = false;
  auto* encode_cmd = app.add_subcommand("encode-schema", "Encode a schema as model input text");
  encode_cmd->add_option("--schema", schema_path, "Schema JSON")->required();
  encode_cmd->add_option("--style", style, "simple or rich")
      ->check(CLI::IsMember({"simple", "rich"}));
  encode_cmd->add_option("--question", question, "Question used for value annotations");
  encode_cmd->add_flag("--model-input", model_input_flag,
                       "Print `Question | schema | table : cols` instead (simple style)");

  bool send = false;
  qpl::ClientConfig client;
  auto* prompt_cmd = app.add_subcommand("qd-prompt", "Build the question decomposition prompt");
  prompt_cmd->add_option("--schema", schema_path, "Schema JSON")->required();
  prompt_cmd->add_option("--question", question, "Question")->required();
  prompt_cmd->add_option("--qpl", qpl_path, "QPL file")->required();
  prompt_cmd->add_flag("--send", send, "Send the prompt to the chat endpoint and print the steps");
  prompt_cmd->add_option("--base-url", client.base_url, "Chat endpoint base URL");
  prompt_cmd->add_option("--model", client.model, "Model name");
  prompt_cmd->add_option("--api-key-env", client.api_key_env,
                         "Environment variable holding the API key");
  prompt_cmd->add_option("--timeout", client.timeout_seconds, "Timeout in seconds")
      ->check(CLI::PositiveNumber);

  std::string qd_path;
  auto* align_cmd = app.add_subcommand("align", "Score a question decomposition against a plan");
  align_cmd->add_option("--qd", qd_path, "QD file, one `#k = ...` step per line")->required();
  align_cmd->add_option("--qpl", qpl_path, "QPL file")->required();
  align_cmd->add_option("--schema", schema_path, "Schema JSON")->required();

  std::string dataset_path, predictions_path, db_root, format = "md";
  int jobs = 1;
  auto* eval_cmd = app.add_subcommand("eval", "Execution accuracy of predictions over a dataset");
  eval_cmd->add_option("--dataset", dataset_path, "Dataset JSON Lines")->required();
  eval_cmd->add_option("--predictions", predictions_path, "Predictions JSON Lines")->required();
  eval_cmd->add_option("--db-root", db_root, "Directory of <db_id>/ database directories")
      ->required();
  eval_cmd->add_option("--format", format, "md, json or text")
      ->check(CLI::IsMember({"md", "markdown", "json", "text"}));
  eval_cmd->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*parse_cmd) {
      const auto plan = read_plan(file);
      if (as_json) {
        std::cout << qpl::plan_to_json(plan).dump(2) << "\n";
      } else {
        std::cout << qpl::pretty_print(plan) << "\n";
      }
      return 0;
    }

    if (*check_cmd) {
      const auto schema = qpl::load_schema(schema_path);
      const auto plan = read_plan(file);
      const auto diags = qpl::validate(plan, schema);
      for (const auto& d : diags) std::cout << qpl::to_json(d).dump() << "\n";
      return qpl::has_errors(diags) ? 1 : 0;
    }

    if (*compile_cmd) {
      const auto schema = qpl::load_schema(schema_path);
      const auto plan = read_plan(file);
      const auto program = qpl::compile_to_cte(plan, schema, *qpl::dialect_by_name(dialect_name));
      std::cout << program.to_sql() << "\n";
      return 0;
    }

    if (*run_cmd) {
      const auto db = qpl::load_database(db_dir);
      const auto plan = read_plan(file);
      qpl::SqliteBackend backend(db);
      const auto rs = qpl::execute(qpl::compile_to_cte(plan, db.schema), backend);
      std::vector<std::string> header = qpl::output_arity(plan, qpl::plan_root(plan));
      print_relation_csv(header, rs.rows);
      return 0;
    }

    if (*interp_cmd) {
      const auto db = qpl::load_database(db_dir);
      const auto plan = read_plan(file);
      if (const auto diags = qpl::validate(plan, db.schema); qpl::has_errors(diags)) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& d : diags) list.push_back(qpl::to_json(d));
        throw Failure{{{"error", "semantic"}, {"diagnostics", list}}};
      }
      const auto rel = qpl::eval_plan(plan, db);
      std::vector<std::string> header;
      for (const auto& c : rel.columns) header.push_back(c.name);
      print_relation_csv(header, rel.rows);
      return 0;
    }

    if (*compare_cmd) {
      const auto db = qpl::load_database(db_dir);
      const auto plan = read_plan(qpl_path);
      const std::string gold = read_text(gold_sql_path);
      qpl::SqliteBackend backend(db);
      const auto m = qpl::execution_match(gold, plan, backend, db.schema);
      nlohmann::json out = {{"match", m.match}, {"empty_gold", m.empty_gold}};
      if (m.error) out["error"] = *m.error;
      std::cout << out.dump() << "\n";
      return m.match ? 0 : 1;
    }

    if (*encode_cmd) {
      const auto schema = qpl::load_schema(schema_path);
      if (model_input_flag) {
        std::cout << qpl::model_input(question, schema) << "\n";
      } else if (style == "rich") {
        std::cout << qpl::encode_rich(schema, question).text;
      } else {
        std::cout << qpl::encode_simple(schema).text;
      }
      return 0;
    }

    if (*prompt_cmd) {
      const auto schema = qpl::load_schema(schema_path);
      const auto plan = read_plan(qpl_path);
      const std::string prompt = qpl::build_qd_prompt(qpl::encode_simple(schema), question, plan);
      if (!send) {
        std::cout << prompt;
        return 0;
      }
      std::string key;
      if (!client.api_key_env.empty()) {
        if (const char* v = std::getenv(client.api_key_env.c_str())) key = v;
      }
      const auto result = qpl::generate_qd(prompt, client, key);
      for (const auto& s : result.steps) std::cout << s << "\n";
      return 0;
    }

    if (*align_cmd) {
      const auto schema = qpl::load_schema(schema_path);
      const auto plan = read_plan(qpl_path);
      const auto report = qpl::align_qd_qpl(read_qd(qd_path), plan, schema);
      std::cout << qpl::to_json(report).dump(2) << "\n";
      return 0;
    }

    if (*eval_cmd) {
      const auto data = qpl::load_dataset(std::filesystem::path(dataset_path));
      if (!data.errors.empty()) {
        nlohmann::json errors = nlohmann::json::array();
        for (const auto& e : data.errors) errors.push_back({{"line", e.line()}, {"message", e.what()}});
        throw Failure{{{"error", "dataset"}, {"file", dataset_path}, {"errors", errors}}};
      }
      const auto predictions = qpl::load_predictions(std::filesystem::path(predictions_path));
      const auto report = qpl::evaluate(data.records, predictions,
                                        qpl::sqlite_directory_factory(db_root),
                                        qpl::EvalOptions{jobs, 1e-6});
      std::cout << qpl::report_render(report, *qpl::parse_report_format(format));
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << f.payload.dump() << "\n";
    return f.status;
  } catch (const qpl::SyntaxError& e) {
    std::cerr << nlohmann::json{{"error", "syntax"}, {"position", e.position()}, {"message", e.what()}}.dump()
              << "\n";
    return 1;
  } catch (const qpl::BackendError& e) {
    std::cerr << nlohmann::json{{"error", "backend"}, {"clause", e.clause()}, {"message", e.what()}}.dump()
              << "\n";
    return 1;
  } catch (const qpl::FormatError& e) {
    std::cerr << nlohmann::json{{"error", "format"}, {"line", e.line()}, {"message", e.what()}}.dump()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "failure"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}
