#include <algorithm>
#include <cctype>

#include "crosswalk/engine.hpp"
#include "crosswalk/iri.hpp"
#include "crosswalk/json_util.hpp"

namespace crosswalk::engine {

void FunctionRegistry::add(std::string name, FunctionDef def) { functions_[std::move(name)] = std::move(def); }

const FunctionDef* FunctionRegistry::find(std::string_view name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

std::vector<std::string> FunctionRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, def] : functions_) out.push_back(name);
  return out;
}

std::vector<std::string> FunctionRegistry::call(std::string_view name, const FunctionArgs& args) const {
  const auto* def = find(name);
  if (!def) throw FunctionNotFoundError(std::string(name));
  if (args.size() < def->min_args || (def->max_args && args.size() > *def->max_args))
    throw ExecutionError("function \"" + std::string(name) + "\" called with " + std::to_string(args.size()) +
                         " arguments");
  return def->impl(args);
}

void LookupTable::add(std::string_view label, std::string iri) {
  auto& v = entries_[normalize_name(label)];
  if (std::find(v.begin(), v.end(), iri) == v.end()) v.push_back(std::move(iri));
}

std::vector<std::string> LookupTable::lookup(std::string_view label) const {
  auto it = entries_.find(normalize_name(label));
  return it == entries_.end() ? std::vector<std::string>{} : it->second;
}

namespace {

std::string expand_concept(const std::string& value) {
  if (!value.empty() && std::all_of(value.begin(), value.end(), [](unsigned char c) { return std::isdigit(c); }))
    return std::string(ns::aat) + value;
  if (value.rfind("aat:", 0) == 0) return std::string(ns::aat) + value.substr(4);
  if (!is_absolute_iri(value)) throw FormatError("lookup table value is not an IRI: \"" + value + "\"");
  return value;
}

}  // namespace

LookupTable parse_lookup_table(std::string_view json_text) {
  auto doc = json_util::parse(json_text);
  if (!doc.is_object()) throw FormatError("lookup table must be a JSON object");
  LookupTable table;
  for (const auto& [label, value] : doc.items()) {
    if (value.is_string()) {
      table.add(label, expand_concept(value.get<std::string>()));
    } else if (value.is_array()) {
      for (const auto& v : value) {
        if (!v.is_string()) throw FormatError("lookup table entry \"" + label + "\" must hold strings");
        table.add(label, expand_concept(v.get<std::string>()));
      }
    } else {
      throw FormatError("lookup table entry \"" + label + "\" must be a string or a list of strings");
    }
  }
  return table;
}

LookupTable default_aat_table() {
  LookupTable t;
  t.add("drawing technique", std::string(ns::aat) + "300054196");
  return t;
}

FunctionRegistry& register_builtin_functions(FunctionRegistry& registry, LookupTable aat) {
  auto single = [](auto fn) {
    return [fn](const FunctionArgs& a) -> std::vector<std::string> {
      if (!a[0]) return {};
      return {fn(*a[0])};
    };
  };

  registry.add("aat_lookup", {[table = std::move(aat)](const FunctionArgs& a) -> std::vector<std::string> {
                                if (!a[0]) return {};
                                return table.lookup(*a[0]);
                              },
                              1, 1});
  registry.add("trim", {single([](const std::string& v) { return trim(v); }), 1, 1});
  registry.add("lowercase", {single([](std::string v) {
                               for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                               return v;
                             }),
                             1, 1});
  registry.add("concat", {[](const FunctionArgs& a) -> std::vector<std::string> {
                            if (std::any_of(a.begin(), a.end(), [](const auto& v) { return !v; })) return {};
                            std::string out;
                            for (std::size_t i = 1; i < a.size(); ++i) {
                              if (i > 1) out += *a[0];
                              out += *a[i];
                            }
                            return {out};
                          },
                          2, std::nullopt});
  registry.add("fixed_prefix", {[](const FunctionArgs& a) -> std::vector<std::string> {
                                  if (!a[0] || !a[1]) return {};
                                  return {*a[0] + *a[1]};
                                },
                                2, 2});
  registry.add("split", {[](const FunctionArgs& a) -> std::vector<std::string> {
                           if (!a[0] || !a[1] || a[0]->empty()) return {};
                           std::vector<std::string> out;
                           std::size_t pos = 0;
                           while (true) {
                             auto next = a[1]->find(*a[0], pos);
                             auto piece = trim(std::string_view(*a[1]).substr(pos, next - pos));
                             if (!piece.empty()) out.push_back(std::move(piece));
                             if (next == std::string::npos) break;
                             pos = next + a[0]->size();
                           }
                           return out;
                         },
                         2, 2});
  return registry;
}

}  // namespace crosswalk::engine
