#include "qsep/symbols.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <deque>

namespace qsep {
namespace {

struct Table {
  std::mutex mu;
  std::deque<std::string> names;  // deque: references stay valid
  std::unordered_map<std::string, int> ids;

  Table() {
    for (const char* n : {"q", "l", "L", "h", "A", "B", "w", "r", "s", "x", "y",
                          "y1", "y2", "e1", "e2", "E1", "E2", "t1", "t2", "t3",
                          "t4", "T1", "T2", "T3", "T4", "u", "z", "a", "b", "c",
                          "d", "g"})
      add(n);
  }
  int add(const std::string& n) {
    int id = static_cast<int>(names.size());
    names.push_back(n);
    ids.emplace(n, id);
    return id;
  }
};

Table& table() {
  static Table t;
  return t;
}

}  // namespace

int symbol_id(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("empty symbol name");
  auto& t = table();
  std::lock_guard<std::mutex> lk(t.mu);
  auto it = t.ids.find(std::string(name));
  if (it != t.ids.end()) return it->second;
  return t.add(std::string(name));
}

const std::string& symbol_name(int id) {
  auto& t = table();
  std::lock_guard<std::mutex> lk(t.mu);
  if (id < 0 || id >= static_cast<int>(t.names.size()))
    throw std::out_of_range("unknown symbol id");
  return t.names[id];
}

int symbol_count() {
  auto& t = table();
  std::lock_guard<std::mutex> lk(t.mu);
  return static_cast<int>(t.names.size());
}

}  // namespace qsep
