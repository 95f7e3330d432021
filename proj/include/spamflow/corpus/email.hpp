#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace spamflow::corpus {

// One masked spam message. `date` holds the parsed Date header as epoch
// seconds (UTC); when the header cannot be parsed the email is kept but
// flagged, never silently defaulted.
struct Email {
    std::string id;
    std::int64_t date = 0;
    bool date_valid = false;
    std::string language;  // ISO-639-1 tag, may be empty
    std::string subject;
    std::string body;
    std::map<std::string, std::string> masked_fields;
};

// Reads a JSON-lines corpus: {"id","date","language","subject","body"}.
// Throws SchemaError on malformed lines or duplicate ids.
std::vector<Email> load_corpus_jsonl(const std::string& path);

}  // namespace spamflow::corpus
