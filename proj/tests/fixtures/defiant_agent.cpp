// Protocol fixture: acknowledges init, then always replies with action 999,
// which is never legal; exercises the re-prompt and fault path.

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
      std::cout << json{{"type", "move"}, {"action", 999}}.dump() << "\n"
                << std::flush;
    }
  }
  return 0;
}
