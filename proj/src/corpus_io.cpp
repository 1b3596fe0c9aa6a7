#include "vtrsim/corpus_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "json.hpp"

#include "vtrsim/csv.hpp"
#include "vtrsim/error.hpp"

namespace vtrsim {

using nlohmann::json;

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "records") return Format::records;
  throw ConfigError("unknown format '" + std::string(name) + "' (expected csv or records)");
}

std::string_view format_name(Format format) {
  return format == Format::csv ? "csv" : "records";
}

std::string_view file_extension(Format format) {
  return format == Format::csv ? ".csv" : ".jsonl";
}

namespace {

Affiliation parse_affiliation(const std::string& text, const std::string& source,
                              std::size_t line) {
  auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw ParseError(source, line, "affiliation '" + text + "' is not university:uda");
  }
  return {text.substr(0, colon), text.substr(colon + 1)};
}

std::vector<Publication> read_publications_csv(std::istream& in, const std::string& source) {
  auto table = csv::Table::read(in, source);
  const auto c_id = table.column("id");
  const auto c_year = table.column("year");
  const auto c_cit = table.column("citations");
  const auto c_cat = table.column("categories");
  const auto c_aff = table.column("affiliations");
  const auto c_override = table.find_column("uda_override");

  std::vector<Publication> pubs;
  pubs.reserve(table.rows().size());
  for (const auto& row : table.rows()) {
    const auto& f = row.fields;
    Publication p;
    p.id = f[c_id];
    if (p.id.empty()) throw ParseError(source, row.line, "empty id");
    p.year = static_cast<int>(csv::parse_int(f[c_year], source, row.line, "year"));
    p.citations = csv::parse_int(f[c_cit], source, row.line, "citations");
    if (p.citations < 0) throw ParseError(source, row.line, "negative citations");
    p.categories = csv::split_list(f[c_cat], ';');
    if (p.categories.empty()) throw ParseError(source, row.line, "no categories");
    for (const auto& a : csv::split_list(f[c_aff], ';')) {
      p.affiliations.push_back(parse_affiliation(a, source, row.line));
    }
    if (p.affiliations.empty()) throw ParseError(source, row.line, "no affiliations");
    if (c_override && !f[*c_override].empty()) p.uda_override = f[*c_override];
    pubs.push_back(std::move(p));
  }
  return pubs;
}

std::vector<StaffEntry> read_staff_csv(std::istream& in, const std::string& source) {
  auto table = csv::Table::read(in, source);
  const auto c_u = table.column("university_id");
  const auto c_d = table.column("uda_id");
  const auto c_f = table.column("fte");
  std::vector<StaffEntry> staff;
  for (const auto& row : table.rows()) {
    StaffEntry s{row.fields[c_u], row.fields[c_d],
                 csv::parse_double(row.fields[c_f], source, row.line, "fte")};
    if (s.fte < 0) throw ParseError(source, row.line, "negative fte");
    staff.push_back(std::move(s));
  }
  return staff;
}

CategoryMap read_category_map_csv(std::istream& in, const std::string& source) {
  auto table = csv::Table::read(in, source);
  const auto c_cat = table.column("category_id");
  const auto c_uda = table.column("uda_id");
  CategoryMap map;
  for (const auto& row : table.rows()) {
    if (!map.emplace(row.fields[c_cat], row.fields[c_uda]).second) {
      throw DuplicateIdError(source + ":" + std::to_string(row.line) + ": duplicate category " +
                             row.fields[c_cat]);
    }
  }
  return map;
}

// Calls fn(object, line) for every non-blank JSON line.
template <typename Fn>
void for_each_record(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto obj = json::parse(line);
      if (!obj.is_object()) throw ParseError(source, line_no, "record is not an object");
      if (obj.contains("meta")) continue;
      fn(obj, line_no);
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
}

std::vector<Publication> read_publications_records(std::istream& in, const std::string& source) {
  std::vector<Publication> pubs;
  for_each_record(in, source, [&](const json& o, std::size_t line) {
    Publication p;
    p.id = o.at("id").get<std::string>();
    p.year = o.at("year").get<int>();
    p.citations = o.at("citations").get<std::int64_t>();
    if (p.citations < 0) throw ParseError(source, line, "negative citations");
    p.categories = o.at("categories").get<std::vector<std::string>>();
    for (const auto& a : o.at("affiliations")) {
      p.affiliations.push_back(
          {a.at("university_id").get<std::string>(), a.at("uda_id").get<std::string>()});
    }
    if (p.categories.empty()) throw ParseError(source, line, "no categories");
    if (p.affiliations.empty()) throw ParseError(source, line, "no affiliations");
    if (auto it = o.find("uda_override"); it != o.end() && !it->is_null()) {
      p.uda_override = it->get<std::string>();
    }
    pubs.push_back(std::move(p));
  });
  return pubs;
}

std::vector<StaffEntry> read_staff_records(std::istream& in, const std::string& source) {
  std::vector<StaffEntry> staff;
  for_each_record(in, source, [&](const json& o, std::size_t line) {
    StaffEntry s{o.at("university_id").get<std::string>(), o.at("uda_id").get<std::string>(),
                 o.at("fte").get<double>()};
    if (s.fte < 0) throw ParseError(source, line, "negative fte");
    staff.push_back(std::move(s));
  });
  return staff;
}

CategoryMap read_category_map_records(std::istream& in, const std::string& source) {
  CategoryMap map;
  for_each_record(in, source, [&](const json& o, std::size_t line) {
    auto cat = o.at("category_id").get<std::string>();
    if (!map.emplace(cat, o.at("uda_id").get<std::string>()).second) {
      throw DuplicateIdError(source + ":" + std::to_string(line) + ": duplicate category " + cat);
    }
  });
  return map;
}

Corpus parse_named(std::istream& pubs, const std::string& pubs_name, std::istream& staff,
                   const std::string& staff_name, std::istream& cats, const std::string& cats_name,
                   Format format) {
  if (format == Format::csv) {
    return Corpus(read_publications_csv(pubs, pubs_name), read_staff_csv(staff, staff_name),
                  read_category_map_csv(cats, cats_name));
  }
  return Corpus(read_publications_records(pubs, pubs_name), read_staff_records(staff, staff_name),
                read_category_map_records(cats, cats_name));
}

void check_list_safe(const std::string& id) {
  if (id.find_first_of(";:") != std::string::npos) {
    throw ConfigError("id '" + id + "' contains ';' or ':' and cannot be written as csv");
  }
}

}  // namespace

Corpus load_corpus(const std::string& publications_path, const std::string& staff_path,
                   const std::string& category_map_path, Format format) {
  auto open = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return in;
  };
  auto pubs = open(publications_path);
  auto staff = open(staff_path);
  auto cats = open(category_map_path);
  return parse_named(pubs, publications_path, staff, staff_path, cats, category_map_path, format);
}

Corpus parse_corpus(std::istream& publications, std::istream& staff, std::istream& category_map,
                    Format format) {
  return parse_named(publications, "publications", staff, "staff", category_map, "category_map",
                     format);
}

CorpusText serialize_corpus(const Corpus& corpus, Format format) {
  CorpusText out;
  std::ostringstream pubs, staff, cats;
  if (format == Format::csv) {
    pubs << "id,year,citations,categories,affiliations,uda_override\n";
    for (const auto& p : corpus.publications()) {
      std::string cat_list, aff_list;
      for (const auto& c : p.categories) {
        check_list_safe(c);
        if (!cat_list.empty()) cat_list += ';';
        cat_list += c;
      }
      for (const auto& a : p.affiliations) {
        check_list_safe(a.university_id);
        check_list_safe(a.uda_id);
        if (!aff_list.empty()) aff_list += ';';
        aff_list += a.university_id + ":" + a.uda_id;
      }
      pubs << csv::join({p.id, std::to_string(p.year), std::to_string(p.citations), cat_list,
                         aff_list, p.uda_override.value_or("")})
           << '\n';
    }
    staff << "university_id,uda_id,fte\n";
    for (const auto& s : corpus.staff()) {
      staff << csv::join({s.university_id, s.uda_id, csv::format_double(s.fte)}) << '\n';
    }
    cats << "category_id,uda_id\n";
    for (const auto& [cat, uda] : corpus.category_map()) {
      cats << csv::join({cat, uda}) << '\n';
    }
  } else {
    for (const auto& p : corpus.publications()) {
      json o = {{"id", p.id},
                {"year", p.year},
                {"citations", p.citations},
                {"categories", p.categories},
                {"affiliations", json::array()}};
      for (const auto& a : p.affiliations) {
        o["affiliations"].push_back({{"university_id", a.university_id}, {"uda_id", a.uda_id}});
      }
      if (p.uda_override) o["uda_override"] = *p.uda_override;
      pubs << o.dump() << '\n';
    }
    for (const auto& s : corpus.staff()) {
      staff << json{{"university_id", s.university_id}, {"uda_id", s.uda_id}, {"fte", s.fte}}.dump()
            << '\n';
    }
    for (const auto& [cat, uda] : corpus.category_map()) {
      cats << json{{"category_id", cat}, {"uda_id", uda}}.dump() << '\n';
    }
  }
  out.publications = pubs.str();
  out.staff = staff.str();
  out.category_map = cats.str();
  return out;
}

}  // namespace vtrsim
