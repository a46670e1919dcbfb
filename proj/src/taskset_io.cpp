#include "wlsched/taskset_io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace wlsched {

using nlohmann::json;

ParseError::ParseError(std::string location, const std::string& message)
    : InvalidInput(location + ": " + message), location_(std::move(location)) {}

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : object.items())
        if (!allowed.count(key)) throw ParseError(where.empty() ? key : where + "." + key, "unknown field");
}

std::int64_t positive_integer(const json& object, const char* key, const std::string& where) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!object.contains(key)) throw ParseError(path, "missing field");
    const json& v = object.at(key);
    if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
    const auto value = v.get<std::int64_t>();
    if (value < 1) throw ParseError(path, "must be at least 1");
    return value;
}

}  // namespace

TaskSystem parse_taskset_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)), e.what());
    }
    if (!doc.is_object()) throw ParseError("line 1", "document must be a JSON object");
    reject_unknown_keys(doc, {"processors", "tasks"}, "");

    const auto processors = positive_integer(doc, "processors", "");
    if (!doc.contains("tasks") || !doc.at("tasks").is_array()) throw ParseError("tasks", "expected an array");
    const json& list = doc.at("tasks");
    if (list.empty()) throw ParseError("tasks", "at least one task is required");

    std::vector<Task> tasks;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "tasks[" + std::to_string(i) + "]";
        const json& entry = list[i];
        if (!entry.is_object()) throw ParseError(where, "expected an object");
        reject_unknown_keys(entry, {"name", "C", "T", "gamma"}, where);

        Task t;
        if (entry.contains("name")) {
            if (!entry.at("name").is_string()) throw ParseError(where + ".name", "expected a string");
            t.name = entry.at("name").get<std::string>();
        } else {
            t.name = "tau_" + std::to_string(i + 1);
        }
        t.wcet = positive_integer(entry, "C", where);
        t.period = positive_integer(entry, "T", where);

        if (!entry.contains("gamma") || !entry.at("gamma").is_array())
            throw ParseError(where + ".gamma", "expected an array of decimal strings");
        const json& gamma = entry.at("gamma");
        if (gamma.size() != static_cast<std::size_t>(processors))
            throw ParseError(where + ".gamma", "has " + std::to_string(gamma.size()) + " entries, expected " +
                                                   std::to_string(processors) + " (one per processor)");
        std::vector<Rat> rates;
        for (std::size_t j = 0; j < gamma.size(); ++j) {
            const std::string at = where + ".gamma[" + std::to_string(j) + "]";
            if (!gamma[j].is_string()) throw ParseError(at, "rates must be strings such as \"1.5\"");
            try {
                rates.push_back(Rat::parse(gamma[j].get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ParseError(at, e.what());
            }
            if (rates.back().sign() <= 0) throw ParseError(at, "rate must be positive");
        }
        t.profile = ParallelismProfile(std::move(rates));
        auto report = validate_profile(t.profile);
        if (!report.ok()) {
            std::string msg = "profile is not work-limited:";
            for (const auto& v : report.violations) msg += " " + v.describe() + ";";
            throw ParseError(where + ".gamma", msg);
        }
        tasks.push_back(std::move(t));
    }
    return TaskSystem(std::move(tasks), static_cast<int>(processors));
}

TaskSystem parse_taskset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_taskset_text(buf.str());
}

std::string serialize_taskset(const TaskSystem& system) {
    json doc;
    doc["processors"] = system.processors();
    doc["tasks"] = json::array();
    for (const auto& t : system.tasks()) {
        json gamma = json::array();
        for (const auto& g : t.profile.gammas()) gamma.push_back(g.decimal_or_fraction());
        doc["tasks"].push_back({{"name", t.name}, {"C", t.wcet}, {"T", t.period}, {"gamma", gamma}});
    }
    return doc.dump(2) + "\n";
}

}  // namespace wlsched
