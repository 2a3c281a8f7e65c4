#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace partynet::csv {

// Streaming reader for delimiter-separated text with RFC-4180 style
// quoting ("" escapes a quote, quoted fields may span lines).
class Reader {
  public:
    Reader(std::istream& in, char delimiter = ',');

    // Reads the next logical record into `fields`. Returns false at EOF.
    bool next(std::vector<std::string>& fields);

    std::uint64_t records_read() const { return records_; }

  private:
    std::istream& in_;
    char delim_;
    std::string line_;
    std::uint64_t records_ = 0;
};

std::string escape_field(std::string_view field, char delimiter = ',');

void write_row(std::ostream& out, const std::vector<std::string>& fields,
               char delimiter = ',');

} // namespace partynet::csv
