// Protocol fixture: replies 999 to every fresh move request, then the first
// legal move once re-prompted; exercises re-prompt recovery.

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
      int reprompt = msg.value("reprompt", 0);
      int action =
          reprompt == 0 ? 999 : msg.at("legal_moves").at(0).get<int>();
      std::cout << json{{"type", "move"}, {"action", action}}.dump() << "\n"
                << std::flush;
    }
  }
  return 0;
}
