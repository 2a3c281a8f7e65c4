#include "partynet/csv.hpp"

namespace partynet::csv {

Reader::Reader(std::istream& in, char delimiter) : in_(in), delim_(delimiter) {}

bool Reader::next(std::vector<std::string>& fields) {
    fields.clear();
    if (!std::getline(in_, line_))
        return false;
    if (!line_.empty() && line_.back() == '\r')
        line_.pop_back();

    std::string field;
    bool in_quotes = false;
    size_t i = 0;
    while (true) {
        if (i >= line_.size()) {
            if (!in_quotes)
                break;
            // Quoted field continues on the next physical line.
            if (!std::getline(in_, line_)) {
                // Unterminated quote at EOF; keep what we have.
                break;
            }
            if (!line_.empty() && line_.back() == '\r')
                line_.pop_back();
            field.push_back('\n');
            i = 0;
            continue;
        }
        char c = line_[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line_.size() && line_[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field.push_back(c);
                ++i;
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
            ++i;
        } else if (c == delim_) {
            fields.push_back(std::move(field));
            field.clear();
            ++i;
        } else {
            field.push_back(c);
            ++i;
        }
    }
    fields.push_back(std::move(field));
    ++records_;
    return true;
}

std::string escape_field(std::string_view field, char delimiter) {
    bool needs_quotes = false;
    for (char c : field) {
        if (c == delimiter || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes)
        return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields,
               char delimiter) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i > 0)
            out << delimiter;
        out << escape_field(fields[i], delimiter);
    }
    out << '\n';
}

} // namespace partynet::csv
