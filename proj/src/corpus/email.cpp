#include "spamflow/corpus/email.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "spamflow/util/errors.hpp"
#include "spamflow/util/time.hpp"

namespace spamflow::corpus {

std::vector<Email> load_corpus_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open corpus: " + path);

    std::vector<Email> emails;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError(path, line_no, std::string("bad JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
            throw SchemaError(path, line_no, "email record needs a string \"id\"");
        }
        Email e;
        e.id = j["id"].get<std::string>();
        if (!seen_ids.insert(e.id).second) {
            throw SchemaError(path, line_no, "duplicate email id: " + e.id);
        }
        if (j.contains("date") && j["date"].is_string()) {
            e.date_valid = util::try_parse_datetime(j["date"].get<std::string>(), e.date);
        }
        if (j.contains("language") && j["language"].is_string()) {
            e.language = j["language"].get<std::string>();
        }
        if (j.contains("subject") && j["subject"].is_string()) {
            e.subject = j["subject"].get<std::string>();
        }
        if (j.contains("body") && j["body"].is_string()) {
            e.body = j["body"].get<std::string>();
        }
        if (j.contains("masked_fields") && j["masked_fields"].is_object()) {
            for (auto& [key, value] : j["masked_fields"].items()) {
                if (value.is_string()) e.masked_fields[key] = value.get<std::string>();
            }
        }
        emails.push_back(std::move(e));
    }
    return emails;
}

}  // namespace spamflow::corpus
