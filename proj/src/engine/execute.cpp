#include <unordered_map>

#include "crosswalk/iri.hpp"
#include "term_internal.hpp"

namespace crosswalk::engine {

namespace {

using tabular::Row;

// A term map with column names resolved to indices of one dataset.
struct Compiled {
  const rml::TermMap* tm = nullptr;
  std::size_t column = 0;                  // reference
  std::optional<Template> pattern;         // template
  std::vector<std::size_t> segment_cols;   // template, parallel to segments
  const FunctionDef* fn = nullptr;         // function
  std::vector<Compiled> args;
};

Compiled compile(const rml::TermMap& tm, const tabular::TabularDataset& data, const FunctionRegistry& registry,
                 const std::string& map_id) {
  Compiled c;
  c.tm = &tm;
  auto column = [&](const std::string& name) {
    auto idx = data.find_column(name);
    if (!idx)
      throw ExecutionError("column \"" + name + "\" not found in source \"" + data.source_id() + "\"", map_id);
    return *idx;
  };
  switch (tm.kind) {
    case rml::TermMapKind::constant:
      break;
    case rml::TermMapKind::reference:
      c.column = column(tm.value);
      break;
    case rml::TermMapKind::template_:
      c.pattern = Template::parse(tm.value);
      for (const auto& seg : c.pattern->segments()) c.segment_cols.push_back(seg.is_column ? column(seg.text) : 0);
      break;
    case rml::TermMapKind::function: {
      c.fn = registry.find(tm.value);
      if (!c.fn) throw FunctionNotFoundError(tm.value, map_id);
      if (tm.args.size() < c.fn->min_args || (c.fn->max_args && tm.args.size() > *c.fn->max_args))
        throw ExecutionError("function \"" + tm.value + "\" takes " + std::to_string(c.fn->min_args) +
                                 (c.fn->max_args ? (*c.fn->max_args == c.fn->min_args
                                                        ? std::string()
                                                        : "-" + std::to_string(*c.fn->max_args))
                                                 : std::string("+")) +
                                 " arguments, got " + std::to_string(tm.args.size()),
                             map_id);
      for (const auto& a : tm.args) c.args.push_back(compile(a, data, registry, map_id));
      break;
    }
  }
  return c;
}

std::vector<std::string> values_of(const Compiled& c, const Row& row) {
  const auto& tm = *c.tm;
  switch (tm.kind) {
    case rml::TermMapKind::constant:
      return {tm.value};
    case rml::TermMapKind::reference: {
      const auto& cell = row[c.column];
      if (!cell) return {};
      return {*cell};
    }
    case rml::TermMapKind::template_: {
      auto v = c.pattern->expand(
          [&](std::size_t i, const std::string&) -> std::optional<std::string_view> {
            const auto& cell = row[c.segment_cols[i]];
            if (!cell) return std::nullopt;
            return std::string_view(*cell);
          },
          tm.term_type == rml::TermType::iri);
      if (!v) return {};
      return {std::move(*v)};
    }
    case rml::TermMapKind::function: {
      FunctionArgs args;
      args.reserve(c.args.size());
      for (const auto& a : c.args) {
        auto v = values_of(a, row);
        args.push_back(v.empty() ? std::nullopt : std::optional<std::string>(std::move(v.front())));
      }
      return c.fn->impl(args);
    }
  }
  return {};
}

void terms_of(const Compiled& c, const Row& row, const TermContext& ctx, std::vector<rdf::Term>& out) {
  out.clear();
  if (c.tm->kind == rml::TermMapKind::constant) {
    out.push_back(detail::constant_term(*c.tm));
    return;
  }
  for (auto& v : values_of(c, row)) out.push_back(detail::make_term(std::move(v), *c.tm, ctx));
}

void append_key_part(std::string& key, const std::string& part) {
  key += std::to_string(part.size());
  key.push_back(':');
  key += part;
}

struct JoinPlan {
  const rml::TriplesMap* parent = nullptr;
  const tabular::TabularDataset* parent_data = nullptr;
  const Compiled* parent_subject = nullptr;
  bool same_row = false;  // no join condition: parent subject of the same row
  std::vector<std::size_t> child_cols;
  std::unordered_map<std::string, std::vector<std::size_t>> index;
};

struct PomPlan {
  Compiled predicate;
  std::optional<Compiled> object;
  std::optional<JoinPlan> join;
  std::string position;
};

struct MapPlan {
  const rml::TriplesMap* tm = nullptr;
  const tabular::TabularDataset* data = nullptr;
  Compiled subject;
  std::vector<PomPlan> poms;
};

}  // namespace

void execute(const rml::RmlGraph& graph, const Sources& sources, const FunctionRegistry& registry,
             const TripleSink& sink) {
  rml::validate(graph);

  // Pre-flight: bind every map to its data and resolve columns and functions.
  std::vector<MapPlan> plans(graph.triples_maps.size());
  std::unordered_map<std::string, std::size_t> plan_of;
  for (std::size_t i = 0; i < graph.triples_maps.size(); ++i) {
    const auto& tm = graph.triples_maps[i];
    auto it = sources.find(tm.logical_source.source_id);
    if (it == sources.end()) throw MissingSourceError(tm.logical_source.source_id, tm.id);
    plans[i].tm = &tm;
    plans[i].data = &it->second;
    plans[i].subject = compile(tm.subject.term, it->second, registry, tm.id);
    plan_of[tm.id] = i;
  }
  for (auto& plan : plans) {
    const auto& tm = *plan.tm;
    for (std::size_t k = 0; k < tm.predicate_object_maps.size(); ++k) {
      const auto& pom = tm.predicate_object_maps[k];
      PomPlan pp{compile(pom.predicate, *plan.data, registry, tm.id), std::nullopt, std::nullopt,
                 std::to_string(k)};
      if (const auto* t = std::get_if<rml::TermMap>(&pom.object)) {
        pp.object = compile(*t, *plan.data, registry, tm.id);
      } else {
        const auto& rom = std::get<rml::ReferencingObjectMap>(pom.object);
        const auto& parent_plan = plans[plan_of.at(rom.parent_map)];
        JoinPlan jp;
        jp.parent = parent_plan.tm;
        jp.parent_data = parent_plan.data;
        jp.parent_subject = &parent_plan.subject;
        if (rom.joins.empty()) {
          if (parent_plan.tm->logical_source.source_id != tm.logical_source.source_id)
            throw ExecutionError("join to \"" + rom.parent_map + "\" needs a join condition across different sources",
                                 tm.id);
          jp.same_row = true;
        } else {
          std::vector<std::size_t> parent_cols;
          for (const auto& j : rom.joins) {
            auto c = plan.data->find_column(j.child);
            auto p = parent_plan.data->find_column(j.parent);
            if (!c) throw ExecutionError("join column \"" + j.child + "\" not found", tm.id);
            if (!p) throw ExecutionError("join column \"" + j.parent + "\" not found", rom.parent_map);
            jp.child_cols.push_back(*c);
            parent_cols.push_back(*p);
          }
          const auto& rows = parent_plan.data->rows();
          for (std::size_t r = 0; r < rows.size(); ++r) {
            std::string key;
            bool complete = true;
            for (auto col : parent_cols) {
              if (!rows[r][col]) {
                complete = false;
                break;
              }
              append_key_part(key, *rows[r][col]);
            }
            if (complete) jp.index[key].push_back(r);
          }
        }
        pp.join = std::move(jp);
      }
      plan.poms.push_back(std::move(pp));
    }
  }

  const rdf::Iri type_predicate{std::string(rdf_type)};
  std::vector<rdf::Term> subjects, predicates, objects;
  for (const auto& plan : plans) {
    const auto& tm = *plan.tm;
    const auto& rows = plan.data->rows();
    std::vector<rdf::Iri> classes;
    for (const auto& c : tm.subject.classes) classes.push_back(rdf::Iri{c});
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      TermContext ctx{tm.id, r, {}};
      terms_of(plan.subject, row, ctx, subjects);
      if (subjects.empty()) continue;
      for (const auto& s_term : subjects) {
        rdf::Subject subject = std::holds_alternative<rdf::Iri>(s_term)
                                   ? rdf::Subject(std::get<rdf::Iri>(s_term))
                                   : rdf::Subject(std::get<rdf::BlankNode>(s_term));
        for (const auto& cls : classes) sink({subject, type_predicate, cls});
        for (const auto& pp : plan.poms) {
          ctx.position = "";
          terms_of(pp.predicate, row, ctx, predicates);
          if (predicates.empty()) continue;
          ctx.position = pp.position;
          if (pp.object) {
            terms_of(*pp.object, row, ctx, objects);
          } else {
            const auto& jp = *pp.join;
            objects.clear();
            std::vector<rdf::Term> parent_terms;
            auto add_parent = [&](std::size_t pr) {
              terms_of(*jp.parent_subject, jp.parent_data->rows()[pr], TermContext{jp.parent->id, pr, {}},
                       parent_terms);
              objects.insert(objects.end(), parent_terms.begin(), parent_terms.end());
            };
            if (jp.same_row) {
              add_parent(r);
            } else {
              std::string key;
              bool complete = true;
              for (auto col : jp.child_cols) {
                if (!row[col]) {
                  complete = false;
                  break;
                }
                append_key_part(key, *row[col]);
              }
              if (complete) {
                auto hit = jp.index.find(key);
                if (hit != jp.index.end())
                  for (auto pr : hit->second) add_parent(pr);
              }
            }
          }
          for (const auto& p : predicates) {
            const auto* piri = std::get_if<rdf::Iri>(&p);
            if (!piri) throw ExecutionError("predicate map produced a non-IRI term", tm.id, r);
            for (const auto& o : objects) sink({subject, *piri, o});
          }
        }
      }
    }
  }
}

std::vector<rdf::Triple> execute(const rml::RmlGraph& graph, const Sources& sources,
                                 const FunctionRegistry& registry) {
  std::vector<rdf::Triple> out;
  execute(graph, sources, registry, [&](const rdf::Triple& t) { out.push_back(t); });
  return out;
}

}  // namespace crosswalk::engine
