#include "signbridge/nlp/resources.hpp"

#include <fstream>
#include <vector>

#include "signbridge/nlp/text.hpp"

namespace signbridge::nlp {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    cells.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cells;
}

// Calls fn(cells, line_number) for every data line.
template <typename Fn>
void for_each_row(const std::filesystem::path& path, std::size_t columns, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw DataFileError("cannot open data file: " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cells = split_tabs(line);
    if (cells.size() != columns) {
      throw DataFileError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                          std::to_string(columns) + " tab-separated fields");
    }
    fn(cells, line_no);
  }
}

std::optional<LemmaClass> parse_lemma_class(std::string_view name) {
  if (name == "noun") return LemmaClass::Noun;
  if (name == "verb") return LemmaClass::Verb;
  if (name == "adj") return LemmaClass::Adjective;
  if (name == "adv") return LemmaClass::Adverb;
  return std::nullopt;
}

}  // namespace

TagLexicon::TagLexicon(std::unordered_map<std::string, PosTag> entries)
    : entries_(std::move(entries)) {}

TagLexicon TagLexicon::load(const std::filesystem::path& path) {
  std::unordered_map<std::string, PosTag> entries;
  for_each_row(path, 2, [&](const std::vector<std::string>& cells, std::size_t line_no) {
    auto tag = parse_pos_tag(cells[1]);
    if (!tag) {
      throw DataFileError(path.string() + ":" + std::to_string(line_no) + ": unknown tag " +
                          cells[1]);
    }
    entries.emplace(to_lower(cells[0]), *tag);
  });
  return TagLexicon(std::move(entries));
}

std::optional<PosTag> TagLexicon::lookup(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

StopWordList::StopWordList(std::initializer_list<std::string_view> words) {
  for (auto w : words) insert(w);
}

StopWordList StopWordList::load(const std::filesystem::path& path) {
  StopWordList list;
  for_each_row(path, 1, [&](const std::vector<std::string>& cells, std::size_t) {
    list.insert(cells[0]);
  });
  return list;
}

void StopWordList::insert(std::string_view word) {
  auto lowered = to_lower(word);
  if (lowered.empty() || lowered == "will" || lowered == "shall") return;
  words_.insert(std::move(lowered));
}

bool StopWordList::contains(std::string_view word) const {
  return words_.count(to_lower(word)) != 0;
}

ContractionTable::ContractionTable(
    std::initializer_list<std::pair<std::string_view, std::string_view>> rows) {
  for (auto [from, to] : rows) rows_.emplace(to_lower(from), std::string(to));
}

ContractionTable ContractionTable::load(const std::filesystem::path& path) {
  ContractionTable table;
  for_each_row(path, 2, [&](const std::vector<std::string>& cells, std::size_t) {
    table.rows_.emplace(to_lower(cells[0]), cells[1]);
  });
  return table;
}

std::optional<std::string_view> ContractionTable::expand(std::string_view lowered) const {
  auto it = rows_.find(std::string(lowered));
  if (it == rows_.end()) return std::nullopt;
  return std::string_view(it->second);
}

std::string_view to_string(LemmaClass cls) {
  switch (cls) {
    case LemmaClass::Noun: return "noun";
    case LemmaClass::Verb: return "verb";
    case LemmaClass::Adjective: return "adj";
    case LemmaClass::Adverb: return "adv";
  }
  return "noun";
}

LemmaExceptions LemmaExceptions::load(const std::filesystem::path& path) {
  LemmaExceptions table;
  for_each_row(path, 3, [&](const std::vector<std::string>& cells, std::size_t line_no) {
    auto cls = parse_lemma_class(cells[2]);
    if (!cls) {
      throw DataFileError(path.string() + ":" + std::to_string(line_no) +
                          ": unknown word class " + cells[2]);
    }
    table.insert(cells[0], *cls, cells[1]);
  });
  return table;
}

void LemmaExceptions::insert(std::string_view form, LemmaClass cls, std::string_view lemma) {
  rows_.emplace(std::make_pair(to_lower(form), cls), to_lower(lemma));
}

std::optional<std::string_view> LemmaExceptions::lookup(std::string_view form,
                                                        LemmaClass cls) const {
  auto it = rows_.find(std::make_pair(std::string(form), cls));
  if (it == rows_.end()) return std::nullopt;
  return std::string_view(it->second);
}

NlpDataPaths NlpDataPaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "tag_lexicon.tsv", dir / "stopwords.txt", dir / "lemma_exceptions.tsv",
          dir / "contractions.tsv"};
}

NlpResources NlpResources::load(const NlpDataPaths& paths) {
  return {TagLexicon::load(paths.tag_lexicon), StopWordList::load(paths.stop_words),
          LemmaExceptions::load(paths.lemma_exceptions),
          ContractionTable::load(paths.contractions)};
}

}  // namespace signbridge::nlp
