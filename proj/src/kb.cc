// Copyright 2026 The tabkb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tabkb/kb.h"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <tuple>

#include "tabkb/labels.h"
#include "tabkb/numeric.h"
#include "tabkb/text.h"
#include "tabkb/units.h"

namespace tabkb {
namespace {

struct Group {
  int table = 0;  // position in the article's table list
  int index = 0;  // material index
  std::string gid;
};

template <typename T>
std::map<int, std::vector<T>> ByIndex(const std::vector<T>& tuples, Axis orientation) {
  std::map<int, std::vector<T>> out;
  for (const auto& t : tuples) out[MaterialIndex(t.entity, orientation)].push_back(t);
  return out;
}

template <typename T>
std::string GroupGid(const std::vector<T>& tuples) {
  for (const auto& t : tuples) {
    std::string g = NormalizeGid(t.entity.material_id);
    if (!g.empty()) return g;
  }
  return "";
}

template <typename T>
std::string RawGid(const std::vector<T>& tuples) {
  for (const auto& t : tuples) {
    if (!Trim(t.entity.material_id).empty()) return t.entity.material_id;
  }
  return "";
}

// Tables grouped per article, articles by pii, tables by index; tuples
// sorted by position so the result does not depend on input order.
std::vector<std::vector<TableExtraction>> Canonical(const std::vector<TableExtraction>& tables) {
  std::map<std::string, std::map<int, TableExtraction>> by;
  for (const auto& t : tables) {
    auto [it, fresh] = by[t.pii].try_emplace(t.table_index, t);
    if (!fresh) {
      auto& dst = it->second;
      dst.compositions.insert(dst.compositions.end(), t.compositions.begin(),
                              t.compositions.end());
      dst.properties.insert(dst.properties.end(), t.properties.begin(), t.properties.end());
    }
  }
  std::vector<std::vector<TableExtraction>> out;
  for (auto& [pii, m] : by) {
    std::vector<TableExtraction> article;
    for (auto& [idx, t] : m) {
      auto& c = t.compositions;
      std::stable_sort(c.begin(), c.end(), [](const auto& a, const auto& b) {
        return std::tie(a.entity.row, a.entity.col, a.constituent) <
               std::tie(b.entity.row, b.entity.col, b.constituent);
      });
      c.erase(std::unique(c.begin(), c.end(),
                          [](const auto& a, const auto& b) {
                            return a.entity == b.entity && a.constituent == b.constituent;
                          }),
              c.end());
      auto& p = t.properties;
      std::stable_sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
        return std::tie(a.entity.row, a.entity.col, a.property) <
               std::tie(b.entity.row, b.entity.col, b.property);
      });
      p.erase(std::unique(p.begin(), p.end(),
                          [](const auto& a, const auto& b) {
                            return a.entity == b.entity && a.property == b.property;
                          }),
              p.end());
      article.push_back(std::move(t));
    }
    out.push_back(std::move(article));
  }
  return out;
}

std::string AxisKey(Axis a) { return std::string(AxisName(a)); }

Axis AxisFromName(const std::string& s) {
  if (s == "row") return Axis::kRow;
  if (s == "col") return Axis::kCol;
  throw KbError("unknown orientation " + s);
}

std::string PropertyId(const ExtractedTuple& t) {
  return t.entity.ToString() + "#" + std::string(LabelKey(t.property));
}

}  // namespace

std::string_view LinkKindName(LinkKind kind) {
  switch (kind) {
    case LinkKind::kIntra:
      return "intra";
    case LinkKind::kInter:
      return "inter";
    case LinkKind::kUnlinkedProperty:
      return "unlinked-property";
    case LinkKind::kUnlinkedComposition:
      return "unlinked-composition";
  }
  return "intra";
}

std::optional<LinkKind> LinkKindFromName(std::string_view name) {
  for (LinkKind k : {LinkKind::kIntra, LinkKind::kInter, LinkKind::kUnlinkedProperty,
                     LinkKind::kUnlinkedComposition}) {
    if (LinkKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::map<std::string, std::pair<double, std::string>> KbRecord::CompositionMap() const {
  std::map<std::string, std::pair<double, std::string>> m;
  for (const auto& c : compositions) m.try_emplace(c.constituent, c.value, c.unit);
  return m;
}

std::string NormalizeGid(std::string_view gid) { return AsciiLower(Trim(gid)); }

int MaterialIndex(const EntityId& id, Axis orientation) {
  return orientation == Axis::kCol ? id.row : id.col;
}

std::vector<LinkedPair> LinkIntraTable(const TableExtraction& table) {
  std::vector<LinkedPair> out;
  const auto comps = ByIndex(table.compositions, table.orientation);
  const auto props = ByIndex(table.properties, table.orientation);
  for (const auto& [idx, cs] : comps) {
    auto it = props.find(idx);
    if (it == props.end()) continue;
    for (const auto& c : cs) {
      for (const auto& p : it->second) {
        out.push_back({c.entity.ToString(), p.entity.ToString(), LinkKind::kIntra});
      }
    }
  }
  return out;
}

std::vector<LinkedPair> LinkInterTable(const std::vector<TableExtraction>& article,
                                       const std::vector<std::string>& skip_properties) {
  const std::set<std::string> skip(skip_properties.begin(), skip_properties.end());
  std::vector<LinkedPair> out;
  for (size_t a = 0; a < article.size(); ++a) {
    for (const auto& [idx, cs] : ByIndex(article[a].compositions, article[a].orientation)) {
      const std::string gid = GroupGid(cs);
      if (gid.empty()) continue;
      for (size_t b = 0; b < article.size(); ++b) {
        if (b == a || article[b].pii != article[a].pii) continue;
        for (const auto& p : article[b].properties) {
          if (NormalizeGid(p.entity.material_id) != gid) continue;
          if (skip.count(p.entity.ToString())) continue;
          for (const auto& c : cs) {
            out.push_back({c.entity.ToString(), p.entity.ToString(), LinkKind::kInter});
          }
        }
      }
    }
  }
  return out;
}

std::vector<KbRecord> BuildKnowledgeBase(const std::vector<TableExtraction>& tables) {
  std::vector<KbRecord> intra, inter, only_prop, only_comp;
  for (const auto& article : Canonical(tables)) {
    std::vector<std::map<int, std::vector<CompositionTuple>>> comps;
    std::vector<std::map<int, std::vector<ExtractedTuple>>> props;
    for (const auto& t : article) {
      comps.push_back(ByIndex(t.compositions, t.orientation));
      props.push_back(ByIndex(t.properties, t.orientation));
    }
    std::set<std::pair<size_t, int>> comp_linked, prop_linked;

    for (size_t k = 0; k < article.size(); ++k) {
      const auto& t = article[k];
      for (const auto& [idx, cs] : comps[k]) {
        auto it = props[k].find(idx);
        if (it == props[k].end()) continue;
        KbRecord r;
        r.pii = t.pii;
        r.material_id = RawGid(cs).empty() ? RawGid(it->second) : RawGid(cs);
        r.link_kind = LinkKind::kIntra;
        r.tables = {{t.table_index, t.orientation}};
        r.compositions = cs;
        r.properties = it->second;
        intra.push_back(std::move(r));
        comp_linked.insert({k, idx});
        prop_linked.insert({k, idx});
      }
    }
    // Inter links only use property groups without same-table evidence.
    std::set<std::pair<size_t, int>> prop_inter;
    for (size_t a = 0; a < article.size(); ++a) {
      for (const auto& [idx, cs] : comps[a]) {
        const std::string gid = GroupGid(cs);
        if (gid.empty()) continue;
        KbRecord r;
        r.pii = article[a].pii;
        r.material_id = RawGid(cs);
        r.link_kind = LinkKind::kInter;
        r.tables = {{article[a].table_index, article[a].orientation}};
        r.compositions = cs;
        for (size_t b = 0; b < article.size(); ++b) {
          if (b == a) continue;
          bool used = false;
          for (const auto& [pidx, ps] : props[b]) {
            if (prop_linked.count({b, pidx}) || GroupGid(ps) != gid) continue;
            r.properties.insert(r.properties.end(), ps.begin(), ps.end());
            prop_inter.insert({b, pidx});
            used = true;
          }
          if (used) r.tables.emplace_back(article[b].table_index, article[b].orientation);
        }
        if (r.properties.empty()) continue;
        comp_linked.insert({a, idx});
        inter.push_back(std::move(r));
      }
    }
    prop_linked.insert(prop_inter.begin(), prop_inter.end());

    for (size_t k = 0; k < article.size(); ++k) {
      const auto& t = article[k];
      for (const auto& [idx, ps] : props[k]) {
        if (prop_linked.count({k, idx})) continue;
        KbRecord r;
        r.pii = t.pii;
        r.material_id = RawGid(ps);
        r.link_kind = LinkKind::kUnlinkedProperty;
        r.tables = {{t.table_index, t.orientation}};
        r.properties = ps;
        only_prop.push_back(std::move(r));
      }
      for (const auto& [idx, cs] : comps[k]) {
        if (comp_linked.count({k, idx})) continue;
        KbRecord r;
        r.pii = t.pii;
        r.material_id = RawGid(cs);
        r.link_kind = LinkKind::kUnlinkedComposition;
        r.tables = {{t.table_index, t.orientation}};
        r.compositions = cs;
        only_comp.push_back(std::move(r));
      }
    }
  }
  std::vector<KbRecord> out;
  for (auto* part : {&intra, &inter, &only_prop, &only_comp}) {
    for (auto& r : *part) out.push_back(std::move(r));
  }
  return out;
}

std::vector<TableExtraction> ExtractionsFromRecords(const std::vector<KbRecord>& records) {
  std::map<std::pair<std::string, int>, TableExtraction> tables;
  std::set<std::string> seen_comp, seen_prop;
  auto table_for = [&](const KbRecord& r, const EntityId& id) -> TableExtraction& {
    auto [it, fresh] = tables.try_emplace({id.pii, id.table_index});
    if (fresh) {
      it->second.pii = id.pii;
      it->second.table_index = id.table_index;
      for (const auto& [ti, axis] : r.tables) {
        if (ti == id.table_index) it->second.orientation = axis;
      }
    }
    return it->second;
  };
  for (const auto& r : records) {
    for (const auto& c : r.compositions) {
      if (!seen_comp.insert(c.entity.ToString() + "#" + c.constituent).second) continue;
      table_for(r, c.entity).compositions.push_back(c);
    }
    for (const auto& p : r.properties) {
      if (!seen_prop.insert(PropertyId(p)).second) continue;
      table_for(r, p.entity).properties.push_back(p);
    }
  }
  std::vector<TableExtraction> out;
  for (auto& [key, t] : tables) out.push_back(std::move(t));
  return out;
}

std::vector<KbRecord> Relink(const std::vector<KbRecord>& records) {
  return BuildKnowledgeBase(ExtractionsFromRecords(records));
}

std::vector<LinkedPair> RecordPairs(const KbRecord& record) {
  std::vector<LinkedPair> out;
  if (record.link_kind != LinkKind::kIntra && record.link_kind != LinkKind::kInter) return out;
  for (const auto& c : record.compositions) {
    for (const auto& p : record.properties) {
      out.push_back({c.entity.ToString(), p.entity.ToString(), record.link_kind});
    }
  }
  return out;
}

nlohmann::ordered_json RecordToJson(const KbRecord& record) {
  nlohmann::ordered_json j;
  j["pii"] = record.pii;
  j["material_id"] = record.material_id;
  j["link_kind"] = LinkKindName(record.link_kind);
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();
  for (const auto& [ti, axis] : record.tables) {
    tables.push_back({{"table_index", ti}, {"orientation", AxisKey(axis)}});
  }
  j["tables"] = tables;
  nlohmann::ordered_json comp = nlohmann::ordered_json::object();
  for (const auto& [name, vu] : record.CompositionMap()) {
    comp[name] = {{"value", vu.first}, {"unit", vu.second}};
  }
  j["composition"] = comp;
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const auto& c : record.compositions) cs.push_back(CompositionTupleToJson(c));
  j["composition_entities"] = cs;
  nlohmann::ordered_json ps = nlohmann::ordered_json::array();
  for (const auto& p : record.properties) ps.push_back(TupleToJson(p));
  j["properties"] = ps;
  return j;
}

KbRecord RecordFromJson(const nlohmann::json& j) {
  KbRecord r;
  r.pii = j.at("pii").get<std::string>();
  r.material_id = j.value("material_id", std::string());
  const auto kind = LinkKindFromName(j.at("link_kind").get<std::string>());
  if (!kind) throw KbError("unknown link_kind " + j.at("link_kind").dump());
  r.link_kind = *kind;
  for (const auto& t : j.at("tables")) {
    r.tables.emplace_back(t.at("table_index").get<int>(),
                          AxisFromName(t.at("orientation").get<std::string>()));
  }
  for (const auto& c : j.value("composition_entities", nlohmann::json::array())) {
    r.compositions.push_back(CompositionTupleFromJson(c));
  }
  for (const auto& p : j.value("properties", nlohmann::json::array())) {
    r.properties.push_back(TupleFromJson(p));
  }
  if (r.compositions.empty() && r.properties.empty()) {
    throw KbError("record carries neither composition nor property");
  }
  for (const auto& c : r.compositions) {
    if (c.entity.pii != r.pii) throw KbError("composition entity from another article");
  }
  for (const auto& p : r.properties) {
    if (p.entity.pii != r.pii) throw KbError("property entity from another article");
  }
  return r;
}

namespace {

std::string HeaderLine(size_t n) {
  nlohmann::ordered_json header;
  header["schema"] = kKbSchema;
  header["version"] = kKbVersion;
  header["records"] = n;
  return header.dump() + "\n";
}

}  // namespace

std::string SerializeKb(const std::vector<KbRecord>& records) {
  std::string out = HeaderLine(records.size());
  for (const auto& r : records) out += RecordToJson(r).dump() + "\n";
  return out;
}

std::vector<KbRecord> ParseKb(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  std::string line;
  size_t line_no = 0;
  bool header = false;
  std::vector<KbRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!header) {
        if (j.value("schema", std::string()) != kKbSchema) throw KbError("missing schema header");
        if (j.value("version", 0) != kKbVersion) {
          throw KbError("unsupported version " + j.value("version", nlohmann::json()).dump());
        }
        header = true;
        continue;
      }
      out.push_back(RecordFromJson(j));
    } catch (const KbError& e) {
      throw KbError("kb line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::exception& e) {
      throw KbError("kb line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!header) throw KbError("empty kb file");
  return out;
}

std::string KbIndex(const std::vector<KbRecord>& records) {
  std::map<std::string, std::vector<size_t>> offsets;
  size_t offset = HeaderLine(records.size()).size();
  for (const auto& r : records) {
    const std::string gid = NormalizeGid(r.material_id);
    if (!gid.empty()) offsets[gid].push_back(offset);
    offset += RecordToJson(r).dump().size() + 1;
  }
  std::string out;
  for (const auto& [gid, offs] : offsets) {
    out += gid + "\t";
    for (size_t i = 0; i < offs.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(offs[i]);
    }
    out += '\n';
  }
  return out;
}

void WriteKb(const std::string& path, const std::vector<KbRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw KbError("cannot write " + path);
  out << SerializeKb(records);
  std::ofstream idx(path + ".idx", std::ios::binary | std::ios::trunc);
  if (!idx) throw KbError("cannot write " + path + ".idx");
  idx << KbIndex(records);
}

std::vector<KbRecord> ReadKb(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KbError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseKb(ss.str());
}

bool Predicate::Holds(double v) const {
  switch (op) {
    case Comparator::kGe:
      return v >= threshold;
    case Comparator::kGt:
      return v > threshold;
    case Comparator::kLe:
      return v <= threshold;
    case Comparator::kLt:
      return v < threshold;
    case Comparator::kEq:
      return v == threshold;
  }
  return false;
}

Predicate ParsePredicate(std::string_view text, const Config& cfg) {
  static const std::regex re(R"(^\s*([^<>=]+?)\s*(>=|<=|==|=|>|<)\s*([^@\s]+)\s*(?:@\s*(.*?))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw QueryError("cannot parse predicate '" + s + "'");
  Predicate p;
  const auto code = LabelFromKey(m.str(1));
  if (!code || !IsProperty(*code)) throw QueryError("unknown property '" + m.str(1) + "'");
  p.property = *code;
  const std::string op = m.str(2);
  p.op = op == ">=" ? Comparator::kGe
         : op == ">" ? Comparator::kGt
         : op == "<=" ? Comparator::kLe
         : op == "<" ? Comparator::kLt
                     : Comparator::kEq;
  const auto v = ParseValueCell(m.str(3));
  if (!v) throw QueryError("bad threshold '" + m.str(3) + "'");
  p.threshold = v->value;
  if (m[4].matched && !m.str(4).empty()) {
    const auto unit = NormUnit(m.str(4), p.property, cfg.units);
    if (!unit) throw QueryError("unknown unit '" + m.str(4) + "' for " + m.str(1));
    p.unit = *unit;
  } else if (!cfg.units.For(p.property).unitless) {
    throw QueryError("predicate on " + m.str(1) + " needs a unit");
  }
  return p;
}

std::vector<KbRecord> Screen(const std::vector<KbRecord>& records,
                             const std::vector<Predicate>& predicates) {
  std::vector<KbRecord> out;
  for (const auto& r : records) {
    const bool all = std::all_of(predicates.begin(), predicates.end(), [&](const Predicate& q) {
      return std::any_of(r.properties.begin(), r.properties.end(), [&](const ExtractedTuple& t) {
        return t.property == q.property && t.unit == q.unit && q.Holds(t.value);
      });
    });
    if (all) out.push_back(r);
  }
  return out;
}

std::string ScreenTable(const std::vector<KbRecord>& records,
                        const std::vector<Predicate>& predicates) {
  std::string out = "pii\tmaterial_id\tlink_kind\tcomposition";
  std::vector<int> columns;
  for (const auto& q : predicates) {
    if (std::find(columns.begin(), columns.end(), q.property) == columns.end()) {
      columns.push_back(q.property);
    }
  }
  for (int p : columns) out += "\t" + std::string(LabelKey(p));
  out += '\n';
  for (const auto& r : records) {
    std::string comp;
    for (const auto& [name, vu] : r.CompositionMap()) {
      if (!comp.empty()) comp += ' ';
      comp += name + "=" + FormatDouble(vu.first) + vu.second;
    }
    out += r.pii + "\t" + r.material_id + "\t" + std::string(LinkKindName(r.link_kind)) + "\t" +
           comp;
    for (int p : columns) {
      std::string cell;
      for (const auto& t : r.properties) {
        if (t.property != p) continue;
        if (!cell.empty()) cell += ';';
        cell += FormatDouble(t.value);
        if (!t.unit.empty()) cell += " " + t.unit;
      }
      out += "\t" + cell;
    }
    out += '\n';
  }
  return out;
}

}  // namespace tabkb
