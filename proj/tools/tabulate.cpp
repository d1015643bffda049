// Writes the tables of the built-in projective-line model on a point panel.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "p1qft/errors.hpp"
#include "p1qft/model.hpp"
#include "p1qft/parser.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Tabulate the projective-line curve model"};
  std::string points = "-2,-1,0,1,2,3,inf";
  std::string output;
  int max_index = 8;
  int precision = 12;
  app.add_option("--points", points, "Comma-separated panel");
  app.add_option("--max-index", max_index)->check(CLI::Range(1, 32));
  app.add_option("--precision", precision)->check(CLI::Range(1, 256));
  app.add_option("-o,--output", output, "Output file (default: stdout)");
  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<p1qft::Point> panel;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = points.find(',', start);
      panel.push_back(p1qft::parse_point(points.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    const nlohmann::json j = p1qft::TabulatedModel::tabulate(p1qft::p1_model(), panel, max_index, precision);
    p1qft::TabulatedModel::from_json(j);
    if (output.empty()) {
      std::cout << j.dump(1) << "\n";
    } else {
      std::ofstream(output) << j.dump(1) << "\n";
    }
  } catch (const p1qft::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
