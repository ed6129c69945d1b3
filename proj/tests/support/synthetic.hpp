#pragma once

// Generators for synthetic tables and corpora shared by the unit and
// acceptance suites. Everything is seeded; nothing reads the clock.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gendertime/corpus.hpp"
#include "gendertime/name_table.hpp"

namespace gendertime::testing {

struct RandomTableSpec {
  std::size_t max_names = 50;
  std::size_t years = 5;
  int first_year = 1895;
  int last_year = 1945;
  double cell_presence = 0.7;
};

// Random raw records: up to max_names names over `years` distinct years.
// Small counts are common so p(F) ties occur.
inline std::vector<NameCountRecord> random_records(std::uint64_t seed,
                                                   const RandomTableSpec& spec = {}) {
  std::mt19937_64 gen(seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return lo + gen() % (hi - lo + 1);
  };
  const std::size_t n_names = uniform(1, spec.max_names);
  std::vector<int> years;
  while (years.size() < spec.years) {
    const int y = static_cast<int>(uniform(spec.first_year, spec.last_year));
    if (std::find(years.begin(), years.end(), y) == years.end()) years.push_back(y);
  }
  std::vector<NameCountRecord> out;
  for (std::size_t i = 0; i < n_names; ++i) {
    const std::string name = "n" + std::to_string(i);
    for (int y : years) {
      for (Sex sex : {Sex::F, Sex::M}) {
        if (static_cast<double>(gen() % 1000) / 1000.0 >= spec.cell_presence) continue;
        const std::uint64_t count = gen() % 3 == 0 ? uniform(1, 4) : uniform(1, 2000);
        out.push_back({name, sex, count, y});
      }
    }
  }
  return out;
}

// 480 records whose author mentions collapse to exactly 660 distinct
// people once case, spacing and "Surname, Given" order are normalized.
inline std::vector<CorpusRecord> workflow_corpus_480() {
  static const char* given[] = {"Alice",  "Bruno",  "Carla",  "Dmitri", "Elena", "Farid",
                                "Grace",  "Hiro",   "Ines",   "Jonas",  "Karin", "Lars",
                                "Mina",   "Nadia",  "Oskar",  "Priya",  "Quinn", "Rosa",
                                "Sven",   "Tamar",  "Ugo",    "Vera",   "Wendy", "Xavier",
                                "Yusuf",  "Zora",   "Arie",   "Leslie", "Jean",  "Johnnie"};
  static const char* surname[] = {"Abbott", "Baker",  "Chen",   "Dalton", "Evans", "Fischer",
                                  "Garcia", "Hansen", "Ito",    "Jensen", "Kumar", "Lopez",
                                  "Meyer",  "Novak",  "Okafor", "Peters", "Quist", "Rossi",
                                  "Singh",  "Tanaka", "Ulrich", "Vogel"};
  std::vector<std::string> pool;
  for (const char* g : given) {
    for (const char* s : surname) pool.push_back(std::string(g) + " " + s);
  }
  // pool.size() == 30 * 22 == 660
  std::vector<CorpusRecord> records;
  for (std::size_t i = 0; i < 480; ++i) {
    CorpusRecord r;
    r.record_id = "conf/x80/" + std::to_string(i);
    r.venue = i % 2 ? "SIGPLAN" : "SIGOPS";
    r.publication_year = 1980;
    r.authors.push_back(make_mention(pool[i]));
    if (i < 180) {
      r.authors.push_back(make_mention(pool[480 + i]));
    } else {
      // Case/spacing variant of an author already seen.
      std::string variant = pool[(i * 7) % 480];
      for (char& c : variant) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      variant.insert(variant.find(' '), "  ");
      r.authors.push_back(make_mention(variant + " "));
    }
    if (i % 3 == 0) {
      // "Surname, Given" form of someone else already present.
      const std::string& p = pool[(i + 11) % 660];
      const auto sp = p.find(' ');
      r.authors.push_back(make_mention(p.substr(sp + 1) + ", " + p.substr(0, sp)));
    }
    records.push_back(std::move(r));
  }
  return records;
}

// A DBLP-style XML document with `n` publications, alternating article and
// inproceedings, 1-4 authors each.
inline std::string dblp_xml(std::size_t n, int year = 1980) {
  static const char* names[] = {"Jean E. Sammet", "Barbara Liskov", "R. C. Archibald",
                                "Leslie Lamport", "Grace M. Hopper", "Ida Rhodes",
                                "Donald E. Knuth", "Frances E. Allen", "Mary Shaw"};
  std::ostringstream x;
  x << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<dblp>\n";
  for (std::size_t i = 0; i < n; ++i) {
    const bool article = i % 2 == 0;
    const char* tag = article ? "article" : "inproceedings";
    x << "<" << tag << " mdate=\"2020-01-01\" key=\"" << (article ? "journals" : "conf")
      << "/s/" << i << "\">\n";
    const std::size_t authors = 1 + i % 4;
    for (std::size_t a = 0; a < authors; ++a) {
      x << "<author>" << names[(i + a) % 9] << "</author>\n";
    }
    x << "<title>On item " << i << " &amp; its <i>variants</i>.</title>\n";
    x << "<pages>" << i << "-" << i + 9 << "</pages>\n";
    x << "<year>" << year << "</year>\n";
    x << (article ? "<journal>CACM</journal>\n" : "<booktitle>ICSE</booktitle>\n");
    x << "</" << tag << ">\n";
  }
  x << "</dblp>\n";
  return x.str();
}

}  // namespace gendertime::testing
