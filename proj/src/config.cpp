#include "kpp/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kpp/errors.hpp"

namespace kpp {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

IniConfig IniConfig::parse_string(const std::string& text, const std::string& origin) {
    IniConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cpos = line.find_first_of("#;");
        if (cpos != std::string::npos) line.erase(cpos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
            cfg.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": key outside any [section]");
        cfg.sections_[section][key] = val;
    }
    return cfg;
}

IniConfig IniConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

void IniConfig::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set expects section.key=value (got '" + assignment + "')");
    const std::string path = trim(assignment.substr(0, eq));
    const std::string val = trim(assignment.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == path.size())
        throw ConfigError("--set expects section.key=value (got '" + assignment + "')");
    sections_[path.substr(0, dot)][path.substr(dot + 1)] = val;
}

bool IniConfig::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string IniConfig::get_string(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end() || !s->second.count(key))
        throw ConfigError("missing required field " + section + "." + key);
    return s->second.at(key);
}

std::string IniConfig::get_string_or(const std::string& section, const std::string& key,
                                     const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double IniConfig::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(section + "." + key + ": not a number ('" + v + "')");
    return x;
}

double IniConfig::get_double_or(const std::string& section, const std::string& key,
                                double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long IniConfig::get_int_or(const std::string& section, const std::string& key,
                           long fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_string(section, key);
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(section + "." + key + ": not an integer ('" + v + "')");
    return x;
}

std::vector<double> IniConfig::get_double_list_or(const std::string& section,
                                                  const std::string& key,
                                                  const std::vector<double>& fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_string(section, key);
    std::vector<double> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        const double x = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError(section + "." + key + ": bad list entry '" + item + "'");
        out.push_back(x);
    }
    if (out.empty()) throw ConfigError(section + "." + key + ": empty list");
    return out;
}

}  // namespace kpp
