// Protocol fixture: acknowledges init, then never answers a move request;
// exercises the per-move timeout path.

#include <iostream>
#include <string>

#include <json.hpp>

using nlohmann::json;

int main() {
  std::string line;
  while (std::getline(std::cin, line)) {
    json msg;
    try {
      msg = json::parse(line);
    } catch (const json::exception&) {
      continue;
    }
    if (msg.value("type", "") == "init")
      std::cout << json{{"type", "ready"}}.dump() << "\n" << std::flush;
    // move requests are read and ignored
  }
  return 0;
}
