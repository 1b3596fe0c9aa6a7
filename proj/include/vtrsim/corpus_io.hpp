#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "vtrsim/corpus.hpp"

namespace vtrsim {

// Delimited text (csv) or one self-describing JSON object per line (records).
enum class Format { csv, records };

Format parse_format(std::string_view name);
std::string_view format_name(Format format);
std::string_view file_extension(Format format);

// Publications: id, year, citations, categories ("C1;C2"), affiliations
// ("U1:PHYS;U2:PHYS"), optional uda_override. Staff: university_id, uda_id,
// fte. Category map: category_id, uda_id.
Corpus load_corpus(const std::string& publications_path, const std::string& staff_path,
                   const std::string& category_map_path, Format format = Format::csv);

Corpus parse_corpus(std::istream& publications, std::istream& staff, std::istream& category_map,
                    Format format = Format::csv);

struct CorpusText {
  std::string publications;
  std::string staff;
  std::string category_map;
};

// Serializes in the same schemas load_corpus reads. CSV output rejects ids
// containing the list separators ';' or ':'.
CorpusText serialize_corpus(const Corpus& corpus, Format format = Format::csv);

}  // namespace vtrsim
