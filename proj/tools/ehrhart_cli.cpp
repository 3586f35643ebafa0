// Command-line front end.
//
// Subcommands:
//   coeff   top quasi-polynomial coefficients of the lattice-point count
//   el      slice valuation E_L of the simplex for a given lattice subspace
//   count   brute-force lattice-point count of one dilate
//   oracle  brute-force quasi-polynomial table for cross-checking
//
// Exit codes: 0 success, 2 malformed input, 3 validation failure
// (e.g. degenerate simplex), 4 refused brute-force guard.

#include "ehrhart/json_io.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

namespace {

ehrhart::Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ehrhart::MalformedInput("cannot open input file: " + path);
  try {
    return ehrhart::Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ehrhart::MalformedInput(e.what());
  }
}

void emit(const ehrhart::Json& j, const std::string& output) {
  std::string text = j.dump(2);
  text.push_back('\n');
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot open output file: " + output);
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact top Ehrhart quasi-polynomial coefficients of rational simplices"};
  app.require_subcommand(1);

  std::string input, subspace_file, output;
  long long k = 1, n = 1;
  long long jobs = 0;  // accepted for interface stability; results never depend on it
  bool force = false, timings = false;

  CLI::App* coeff = app.add_subcommand("coeff", "top quasi-polynomial coefficients");
  coeff->add_option("input", input, "simplex JSON file")->required();
  coeff->add_option("--k", k, "number of top coefficients after the leading one (reports i = 0..k)");
  coeff->add_option("--n", n, "dilation argument the coefficients are evaluated at");
  coeff->add_option("--jobs", jobs, "parallelism degree (output-neutral)");
  coeff->add_option("--output", output, "write the JSON report here instead of stdout");
  coeff->add_flag("--timings", timings, "include wall-clock timings in the report");

  CLI::App* el = app.add_subcommand("el", "slice valuation E_L of the simplex");
  el->add_option("input", input, "simplex JSON file")->required();
  el->add_option("subspace", subspace_file, "subspace JSON file ({\"dim\":d,\"vectors\":[...]})")
      ->required();
  el->add_option("--jobs", jobs, "parallelism degree (output-neutral)");
  el->add_option("--output", output, "write the JSON report here instead of stdout");

  CLI::App* count = app.add_subcommand("count", "brute-force lattice-point count of the n-th dilate");
  count->add_option("input", input, "simplex JSON file")->required();
  count->add_option("--n", n, "dilation factor");
  count->add_flag("--force", force, "run even for dimension > 7");
  count->add_option("--output", output, "write the JSON report here instead of stdout");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force quasi-polynomial table");
  oracle->add_option("input", input, "simplex JSON file")->required();
  oracle->add_option("--k", k, "accepted for symmetry with coeff; the table is always complete");
  oracle->add_flag("--force", force, "run even for dimension > 7");
  oracle->add_option("--output", output, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (coeff->parsed()) {
      ehrhart::Simplex s = ehrhart::simplex_from_json(read_json_file(input));
      if (k < 0) throw std::invalid_argument("k must be >= 0");
      if (k > 3)
        std::cerr << "warning: k = " << k << " > 3 can be slow in higher dimensions\n";
      auto start = std::chrono::steady_clock::now();
      ehrhart::EhrhartContext ctx(s);
      ehrhart::CoeffReport rep =
          ehrhart::top_coefficients(ctx, std::size_t(k), ehrhart::Int(n));
      ehrhart::Json j = ehrhart::coeff_report_to_json(rep);
      if (timings) {
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        j["timings"] = ehrhart::Json{{"total_seconds", dt.count()}};
      }
      emit(j, output);
    } else if (el->parsed()) {
      ehrhart::Simplex s = ehrhart::simplex_from_json(read_json_file(input));
      ehrhart::Subspace l = ehrhart::subspace_from_json(read_json_file(subspace_file));
      if (l.ambient_dim != s.dim)
        throw std::invalid_argument("subspace ambient dimension does not match the simplex");
      ehrhart::Json j;
      j["d"] = s.dim;
      j["dim_L"] = l.dim();
      if (l.dim() == 0) {
        j["value"] = ehrhart::rat_to_string(
            ehrhart::abs_rat(ehrhart::det(ehrhart::edge_matrix(s))) /
            ehrhart::Rat(ehrhart::factorial(s.dim)));
        j["chambers"] = 0;
        j["phi_degrees"] = ehrhart::Json::array();
      } else {
        ehrhart::SliceStructure st = ehrhart::build_slice_structure(s, l);
        j["value"] = ehrhart::rat_to_string(ehrhart::eval_EL_dilated(st, 1));
        j["chambers"] = st.chambers.size();
        ehrhart::Json degs = ehrhart::Json::array();
        for (const ehrhart::Poly& f : st.phi) degs.push_back(f.total_degree());
        j["phi_degrees"] = std::move(degs);
      }
      emit(j, output);
    } else if (count->parsed()) {
      ehrhart::Simplex s = ehrhart::simplex_from_json(read_json_file(input));
      if (s.dim > 7 && !force) {
        std::cerr << "error: brute-force enumeration refused for dimension > 7 "
                     "(pass --force to override)\n";
        return 4;
      }
      ehrhart::Int c = ehrhart::count_points(s, ehrhart::Int(n));
      ehrhart::Json j;
      j["d"] = s.dim;
      j["n"] = ehrhart::Int(n).str();
      j["count"] = c.str();
      emit(j, output);
    } else if (oracle->parsed()) {
      ehrhart::Simplex s = ehrhart::simplex_from_json(read_json_file(input));
      if (s.dim > 7 && !force) {
        std::cerr << "error: brute-force enumeration refused for dimension > 7 "
                     "(pass --force to override)\n";
        return 4;
      }
      emit(ehrhart::fit_result_to_json(ehrhart::fit_quasipolynomial(s)), output);
    }
  } catch (const ehrhart::MalformedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
