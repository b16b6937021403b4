// Copyright 2026 The meqlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <variant>

#include "meq/coloring.h"
#include "meq/constructions.h"
#include "meq/errors.h"
#include "meq/serialization.h"
#include "meq/simulate.h"
#include "meq/transforms.h"
#include "meq/verifier.h"

namespace meq::cli {
namespace {

using Protocol = std::variant<TableProtocol, GeneralProtocol>;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text << '\n';
}

std::string Bits(double bits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << bits;
  return os.str();
}

std::string FormatComplexity(const Complexity& c) {
  return "C=log2 " + std::to_string(c.product) + " = " + Bits(c.bits) +
         " bits";
}

template <typename Seq>
std::string Tuple(const Seq& values) {
  std::string s = "(";
  bool first = true;
  for (const auto& v : values) {
    if (!first) s += ',';
    s += std::to_string(v);
    first = false;
  }
  return s + ")";
}

std::string Describe(const Triple& t) {
  return "(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," +
         std::to_string(t.c) + ")";
}

Complexity ComplexityOfAny(const Protocol& p) {
  return std::visit([](const auto& q) { return ComplexityOf(q); }, p);
}

GeneralProtocol AsGeneral(const Protocol& p) {
  if (const auto* t = std::get_if<TableProtocol>(&p)) return TableToGeneral(*t);
  return std::get<GeneralProtocol>(p);
}

std::string ToJsonAny(const Protocol& p) {
  return std::visit([](const auto& q) { return ToJson(q); }, p);
}

// Writes a document to `path`, or to `out` when path is empty.
void Emit(const std::string& path, const std::string& json, std::ostream& out) {
  if (path.empty()) {
    out << json << '\n';
  } else {
    WriteFile(path, json);
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Multiparty equality protocol workbench", "meq"};
  app.require_subcommand(1);
  // -h would collide with the --h dimension option.
  app.set_help_flag("--help", "Print this help message and exit");

  // build
  auto* build = app.add_subcommand("build", "Construct a protocol");
  std::string build_kind, build_in, build_out;
  int build_n = 3, build_M = 0, build_h = 1, build_k = 0;
  build->add_option("kind", build_kind, "star|table36|ext6h|par6h|bin2k|cdwrap")
      ->required()
      ->check(CLI::IsMember(
          {"star", "table36", "ext6h", "par6h", "bin2k", "cdwrap"}));
  build->add_option("protocol", build_in, "Input table protocol (cdwrap)");
  build->add_option("--n", build_n, "Node count (star)");
  build->add_option("--M", build_M, "Input alphabet size (star)");
  build->add_option("--h", build_h, "Dimension (ext6h, par6h)");
  build->add_option("--k", build_k, "log2 M (bin2k)");
  build->add_option("--out", build_out, "Output file (default: stdout)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a protocol on one input");
  std::string sim_in;
  std::vector<int> sim_x;
  simulate->add_option("protocol", sim_in)->required();
  simulate->add_option("inputs", sim_x, "x_1 ... x_n")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Exhaustively check correctness");
  std::string verify_in;
  bool verify_ad = false, verify_cd = false;
  int detector = 0;
  std::uint64_t budget = kDefaultEnumerationBudget;
  verify->add_option("protocol", verify_in)->required();
  auto* ad_flag = verify->add_flag("--ad", verify_ad, "Anyone-detects");
  auto* cd_flag = verify->add_flag("--cd", verify_cd, "Centralized detect");
  ad_flag->excludes(cd_flag);
  verify->add_option("--detector", detector, "Detector node (default n)");
  verify->add_option("--budget", budget, "Cap on M^n");

  // transform
  auto* transform = app.add_subcommand("transform", "Rewrite a protocol");
  std::string tr_in, tr_op, tr_out;
  std::size_t tr_step = 0;
  transform->add_option("protocol", tr_in)->required();
  transform->add_option("operation", tr_op, "flip|iid")
      ->required()
      ->check(CLI::IsMember({"flip", "iid"}));
  transform->add_option("step", tr_step, "1-based step index (flip)");
  transform->add_option("--out", tr_out, "Output file (default: stdout)");
  transform->add_option("--budget", budget, "Cap on M^n");

  // search
  auto* search = app.add_subcommand("search", "Exact optimum for three nodes");
  int search_M = 0;
  std::uint64_t graph_budget = SearchOptions{}.graph_budget;
  std::string search_out, graph_out;
  search->add_option("--M", search_M, "Input alphabet size")->required();
  search->add_option("--budget", graph_budget, "Cap on graphs examined");
  search->add_option("--out", search_out, "Witness protocol file");
  search->add_option("--graph-out", graph_out, "Witness bipartite graph file");

  // figure
  auto* figure = app.add_subcommand("figure", "CSV of the binary protocol cost");
  int k_max = 0;
  figure->add_option("--kmax", k_max, "Largest k")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (build->parsed()) {
      Protocol p = Table36();
      if (build_kind == "star") {
        if (build_M < 1) throw InvalidArgument("star needs --M >= 1");
        p = StarProtocol(build_n, build_M);
      } else if (build_kind == "ext6h") {
        p = ExtendedTable(build_h);
      } else if (build_kind == "par6h") {
        const TableProtocol base = Table36();
        int M = 1;
        for (int i = 0; i < build_h; ++i) M *= 6;
        if (build_h < 1 || build_h > 6) {
          throw InvalidArgument("par6h requires 1 <= h <= 6");
        }
        p = ParallelCompose(base, VectorMapping::BigEndian(M, 6, build_h));
      } else if (build_kind == "bin2k") {
        p = MeqThreePowerOfTwo(build_k);
      } else if (build_kind == "cdwrap") {
        if (build_in.empty()) throw InvalidArgument("cdwrap needs a protocol file");
        Protocol in = ParseProtocol(ReadFile(build_in));
        const auto* t = std::get_if<TableProtocol>(&in);
        if (t == nullptr) {
          throw InvalidArgument("cdwrap needs a table protocol");
        }
        p = CdWrapper(*t);
      }
      Emit(build_out, ToJsonAny(p), out);
      if (!build_out.empty()) {
        out << "wrote " << build_kind << " protocol to " << build_out << ": "
            << FormatComplexity(ComplexityOfAny(p)) << '\n';
      }
      return kExitOk;
    }

    if (simulate->parsed()) {
      const Protocol p = ParseProtocol(ReadFile(sim_in));
      const int M = std::visit([](const auto& q) { return q.M(); }, p);
      const InputVector v(M, sim_x);
      const Transcript t = std::visit(
          [&](const auto& q) { return Simulate(q, v); }, p);
      out << "symbols " << Tuple(t.symbols) << '\n';
      for (std::size_t i = 0; i < t.decisions.size(); ++i) {
        out << "node " << i + 1 << ": received " << Tuple(t.received[i])
            << " sent " << Tuple(t.sent[i]) << " EQ=" << t.decisions[i]
            << '\n';
      }
      out << "decisions " << Tuple(t.decisions) << '\n';
      return kExitOk;
    }

    if (verify->parsed()) {
      const Protocol p = ParseProtocol(ReadFile(verify_in));
      const VerifyOptions options{budget, 0};
      std::optional<NodeId> node;
      if (detector != 0) node = detector;
      const Verdict verdict = std::visit(
          [&](const auto& q) {
            return verify_cd ? VerifyCentralizedDetect(q, node, options)
                             : VerifyAnyoneDetects(q, options);
          },
          p);
      if (verdict.ok) {
        out << "ok, " << verdict.vectors_checked << " vectors, "
            << FormatComplexity(ComplexityOfAny(p)) << '\n';
        return kExitOk;
      }
      const Counterexample& ce = *verdict.counterexample;
      out << "counterexample: x=" << Tuple(ce.input.values())
          << " decisions=" << Tuple(ce.decisions) << '\n';
      return kExitCounterexample;
    }

    if (transform->parsed()) {
      const GeneralProtocol g = AsGeneral(ParseProtocol(ReadFile(tr_in)));
      if (tr_op == "flip") {
        if (tr_step == 0) throw InvalidArgument("flip needs a step index");
        Emit(tr_out, ToJson(FlipStep(g, tr_step, budget)), out);
      } else {
        Emit(tr_out, ToJson(MakeIid(g, budget)), out);
      }
      return kExitOk;
    }

    if (search->parsed()) {
      SearchOptions options;
      options.graph_budget = graph_budget;
      const SearchResult r = OptimalSearch(search_M, options);
      out << "optimal product " << r.product << " via " << Describe(r.triple)
          << '\n';
      out << "bits " << Bits(r.bits) << '\n';
      out << "infeasible below optimum:";
      for (const Triple& t : r.infeasible) out << ' ' << Describe(t);
      out << '\n';
      out << "graphs examined " << r.graphs_examined << '\n';
      if (!graph_out.empty()) WriteFile(graph_out, ToJson(r.witness));
      Emit(search_out, ToJson(r.protocol), out);
      return kExitOk;
    }

    if (figure->parsed()) {
      if (k_max < 1) throw InvalidArgument("--kmax must be >= 1");
      out << "k,C,upper\n";
      for (int k = 1; k <= k_max; ++k) {
        out << k << ',' << ComplexityFormulaPowerOfTwo(k) << ',' << 2 * k
            << '\n';
      }
      return kExitOk;
    }
  } catch (const SearchBudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\nundecided:";
    for (const Triple& t : e.frontier()) err << ' ' << Describe(t);
    err << '\n';
    return kExitBudget;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace meq::cli
