// Protocol fixture: acknowledges init, then always plays the first legal
// move. Deterministic, replies byte-identically to identical requests.

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
    std::string type = msg.value("type", "");
    if (type == "init") {
      std::cout << json{{"type", "ready"}}.dump() << "\n" << std::flush;
    } else if (type == "move_request") {
      int action = msg.at("legal_moves").at(0).get<int>();
      std::cout << json{{"type", "move"}, {"action", action}}.dump() << "\n"
                << std::flush;
    }
  }
  return 0;
}
