#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace fpir::cli;
  fpir::Limits limits;
  try {
    limits = fpir::Limits::from_env();
  } catch (const fpir::Error& e) {
    std::cerr << error_json(e.kind(), e.what()).dump() << '\n';
    return exit_code_for(e.kind());
  }

  const std::vector<std::string> args(argv + 1, argv + argc);
  const CommandResult r = dispatch(args, limits);
  if (!r.text.empty()) {
    std::cout << r.text;
  } else if (!r.error.is_null()) {
    std::cerr << r.error.dump() << '\n';
  } else if (r.want_csv) {
    std::cout << r.csv;
  } else {
    std::cout << r.json.dump(2) << '\n';
  }
  return r.exit_code;
}
