#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ck/certificate.hpp"

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ck::Field parse_field(const std::string& spec) {
  if (spec == "QQ") return ck::Field::rationals();
  if (spec.rfind("Fp:", 0) == 0) {
    const std::string digits = spec.substr(3);
    if (digits.empty() || digits.size() > 19 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw std::invalid_argument("--field expects QQ or Fp:<prime>");
    return ck::Field::prime(std::stoull(digits));
  }
  throw std::invalid_argument("--field expects QQ or Fp:<prime>");
}

int replay_file(const std::string& path) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << path << ": cannot read\n";
    return ck::kExitInputError;
  }
  int code = 0;
  const auto reports = ck::replay_text(*text);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const std::string tag = reports.size() > 1 ? path + "[" + std::to_string(i) + "]" : path;
    if (r.ok()) {
      std::cout << tag << ": reproduced (" << ck::to_string(r.verdict) << ")\n";
    } else {
      std::cout << tag << ": replay failed\n";
      for (const auto& d : r.defects) std::cout << "  " << d << "\n";
    }
    code = std::max(code, r.exit_code());
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groebner-backed certificates for complete-intersection claims"};
  std::string input, out_path, replay_path, field;
  ck::RunOptions options;
  unsigned degree_bound = 0;
  unsigned jobs = 1;
  bool print_only = false;
  app.add_option("session", input, "session file (.ck), or - for stdin");
  app.add_option("--seed", options.seed, "seed for every randomized search");
  app.add_option("--budget-gb-steps", options.budget.gb_steps, "S-pair reductions per Groebner computation");
  app.add_option("--budget-trials", options.trials, "trials per randomized search");
  auto* bound_opt = app.add_option("--degree-bound", degree_bound, "degree bound for random combinations");
  app.add_option("--out", out_path, "write the certificate(s) here instead of stdout");
  app.add_option("--replay", replay_path, "replay a certificate file and compare");
  app.add_option("--field", field, "override the coefficient field of every ring: QQ or Fp:<p>");
  app.add_flag("--print", print_only, "print the canonical form of the session and exit");
  app.add_option("--jobs", jobs, "check commands run at once")->check(CLI::Range(1u, 256u));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ck::kExitInputError;
  }
  if (*bound_opt) options.degree_bound = degree_bound;

  if (!replay_path.empty()) return replay_file(replay_path);
  if (input.empty()) {
    std::cerr << "no session file given (see --help)\n";
    return ck::kExitInputError;
  }

  std::optional<std::string> text;
  if (input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    text = read_file(input);
  }
  if (!text) {
    std::cerr << input << ": cannot read\n";
    return ck::kExitInputError;
  }

  ck::Session session;
  try {
    ck::ParseOptions parse_options;
    if (!field.empty()) parse_options.field = parse_field(field);
    session = ck::parse_session(*text, parse_options);
  } catch (const ck::ParseError& e) {
    std::cerr << input << ":" << e.what() << "\n";
    return ck::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << input << ": " << e.what() << "\n";
    return ck::kExitInputError;
  }
  if (print_only) {
    std::cout << ck::print(session);
    return 0;
  }
  if (session.commands().empty()) {
    std::cerr << input << ": no check commands\n";
    return ck::kExitInputError;
  }

  const auto outcomes = ck::run_session(session, options, jobs);
  const auto commands = session.commands();
  nlohmann::json docs = nlohmann::json::array();
  int code = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    std::cerr << ck::print(*commands[i]) << "  ";
    if (o.certificate) {
      std::cerr << ck::to_string(o.certificate->verdict) << "\n";
      docs.push_back(o.certificate->document);
    } else {
      std::cerr << "input error: " << o.error << "\n";
    }
    code = std::max(code, o.exit_code());
  }
  const std::string dumped = (docs.size() == 1 ? docs[0] : docs).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << dumped;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!(out << dumped)) {
      std::cerr << out_path << ": cannot write\n";
      return ck::kExitInputError;
    }
  }
  return code;
}
