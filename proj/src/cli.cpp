#include "coxcert/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "coxcert/certify.hpp"
#include "coxcert/coxeter.hpp"
#include "coxcert/errors.hpp"
#include "coxcert/quotients.hpp"
#include "coxcert/report.hpp"
#include "coxcert/word_engine.hpp"

namespace coxcert {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write file: " + path);
  out << bytes;
  out.flush();
  if (!out) throw InvalidArgument("failed writing file: " + path);
}

nlohmann::json parse_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

struct Invocation {
  std::string command;
  std::string system_path;
  std::string certificate_path;
  std::string subset_text;
  bool subset_given = false;
  std::string word_text;
  int max_degree = 4;
  std::size_t max_count = 10;
  bool json = false;
  std::string output_path;
};

nlohmann::json subset_rows(const Certifier& c, const std::vector<Subset>& subsets) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& t : subsets) {
    const TypeDecomposition decomp = classify_finite_type(c.system(), t);
    nlohmann::json types = nlohmann::json::array();
    for (const auto& comp : decomp.components)
      types.push_back(comp.type ? nlohmann::json(comp.type->name())
                                : nlohmann::json(nullptr));
    rows.push_back({{"members", t.members()},
                    {"types", std::move(types)},
                    {"order", to_decimal(order_of(decomp))}});
  }
  return rows;
}

Report run_analyze(const CoxeterSystem& sys) {
  Certifier c(sys);
  nlohmann::json payload{
      {"labels", sys.labels()},
      {"rank", sys.rank()},
      {"spherical_subsets", subset_rows(c, c.spherical_subsets())},
      {"maximal_spherical_subsets", subset_rows(c, c.maximal_subsets())}};
  return Report{"analyze", system_fingerprint(sys), std::move(payload)};
}

Report run_certify(const CoxeterSystem& sys, const Invocation& inv) {
  Certifier c(sys);
  const Subset witness = inv.subset_given
                             ? Subset::parse(inv.subset_text, sys.rank())
                             : c.default_witness();
  const BPCertificate cert = c.certify_bp(witness);
  nlohmann::json payload{{"certificate", cert.to_json()}, {"labels", sys.labels()}};
  return Report{"certify", system_fingerprint(sys), std::move(payload)};
}

Report run_verify(const CoxeterSystem& sys, const Invocation& inv) {
  nlohmann::json doc = parse_json_file(inv.certificate_path);
  // Accept either a bare certificate or a full certify report around one.
  if (doc.is_object() && doc.contains("command") && doc.contains("payload")) {
    const Report wrapper = Report::from_json(doc);
    if (wrapper.command != "certify")
      throw ParseError("report in " + inv.certificate_path +
                       " is not a certify report");
    if (!wrapper.payload.contains("certificate"))
      throw ParseError("certify report lacks a certificate payload");
    doc = wrapper.payload.at("certificate");
  }
  Certifier c(sys);
  const VerifyResult result = c.verify_certificate(doc);
  nlohmann::json payload{{"verified", result.ok},
                         {"failure", std::string(verify_failure_name(result.failure))},
                         {"detail", result.detail}};
  return Report{"verify", system_fingerprint(sys), std::move(payload)};
}

Report run_reduce(const CoxeterSystem& sys, const Invocation& inv) {
  const WordEngine engine(sys);
  const Word input = Word::parse(sys, inv.word_text);
  const NormalForm nf = engine.shortlex_normal_form(input);
  nlohmann::json payload{{"input_word", inv.word_text},
                         {"normal_form", nf.word().to_labels(sys)},
                         {"length", nf.length()},
                         {"letters", nf.letters}};
  return Report{"reduce", system_fingerprint(sys), std::move(payload)};
}

Report run_quotients(const CoxeterSystem& sys, const Invocation& inv) {
  const auto found =
      search_quotients(sys, inv.max_degree, inv.max_count, SearchMode::serial);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& q : found) list.push_back(q.to_json());
  nlohmann::json payload{{"count", found.size()},
                         {"labels", sys.labels()},
                         {"max_count", inv.max_count},
                         {"max_degree", inv.max_degree},
                         {"quotients", std::move(list)}};
  return Report{"quotients", system_fingerprint(sys), std::move(payload)};
}

Report run_separate(const CoxeterSystem& sys, const Invocation& inv) {
  const Word w = Word::parse(sys, inv.word_text);
  const auto quotient = separate_element(sys, w, inv.max_degree);
  nlohmann::json payload{{"found", quotient.has_value()},
                         {"labels", sys.labels()},
                         {"max_degree", inv.max_degree},
                         {"word", inv.word_text},
                         {"quotient", nullptr},
                         {"image", nullptr}};
  if (quotient) {
    payload["quotient"] = quotient->to_json();
    payload["image"] = quotient->image_of(w).cycle_string();
  }
  return Report{"separate", system_fingerprint(sys), std::move(payload)};
}

int dispatch(const Invocation& inv, std::ostream& out) {
  const CoxeterSystem sys = parse_coxeter_system(read_file(inv.system_path));
  Report report;
  if (inv.command == "analyze") report = run_analyze(sys);
  else if (inv.command == "certify") report = run_certify(sys, inv);
  else if (inv.command == "verify") report = run_verify(sys, inv);
  else if (inv.command == "reduce") report = run_reduce(sys, inv);
  else if (inv.command == "quotients") report = run_quotients(sys, inv);
  else if (inv.command == "separate") report = run_separate(sys, inv);
  else throw InvalidArgument("unknown command: " + inv.command);

  out << emit_report(report, inv.json ? OutputMode::json : OutputMode::human);
  if (!inv.output_path.empty())
    write_file(inv.output_path, emit_report(report, OutputMode::json));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Invocation inv;

  CLI::App app{"Coxeter system analysis, BP certificates, words, and finite quotients"};
  app.require_subcommand(1);

  CLI::Option* subset_opt = nullptr;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("system", inv.system_path, "Coxeter system file (.cox)")
        ->required();
    cmd->add_flag("--json", inv.json, "emit the canonical JSON report");
    cmd->add_option("--output", inv.output_path,
                    "also write the canonical JSON report to this path");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "list spherical and maximal spherical subsets with types");
  add_common(analyze);

  CLI::App* certify = app.add_subcommand(
      "certify", "emit a BP certificate for a witness subset");
  add_common(certify);
  subset_opt = certify->add_option(
      "--subset", inv.subset_text,
      "comma-separated generator indices (default: least maximal spherical)");

  CLI::App* verify = app.add_subcommand(
      "verify", "re-check a certificate file against a system");
  add_common(verify);
  verify->add_option("certificate", inv.certificate_path, "certificate JSON file")
      ->required();

  CLI::App* reduce = app.add_subcommand("reduce", "normal form of a word");
  add_common(reduce);
  reduce->add_option("--word", inv.word_text, "word as space-separated labels")
      ->required();

  CLI::App* quotients = app.add_subcommand(
      "quotients", "search finite permutation quotients");
  add_common(quotients);
  quotients->add_option("--max-degree", inv.max_degree, "largest degree searched")
      ->check(CLI::PositiveNumber);
  quotients->add_option("--max-count", inv.max_count, "stop after this many");

  CLI::App* separate = app.add_subcommand(
      "separate", "find a finite quotient separating a word from the identity");
  add_common(separate);
  separate->add_option("--word", inv.word_text, "word as space-separated labels")
      ->required();
  separate->add_option("--max-degree", inv.max_degree, "largest degree searched")
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.push_back("coxcert");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  inv.command = app.get_subcommands().front()->get_name();
  inv.subset_given = subset_opt != nullptr && subset_opt->count() > 0;

  try {
    return dispatch(inv, out);
  } catch (const ConsistencyFault& e) {
    err << "internal consistency fault: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 3;
  } catch (const CapExceeded& e) {
    err << "limit exceeded: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace coxcert
