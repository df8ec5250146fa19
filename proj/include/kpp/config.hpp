#pragma once

#include <map>
#include <string>
#include <vector>

namespace kpp {

// Sectioned key-value config ([section] headers, key = value lines, # or ;
// comments). Lookup errors name the field as "section.key".
class IniConfig {
public:
    static IniConfig parse_file(const std::string& path);
    static IniConfig parse_string(const std::string& text, const std::string& origin = "<string>");

    // "section.key=value" override (the --set flag).
    void apply_override(const std::string& assignment);

    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    long get_int_or(const std::string& section, const std::string& key, long fallback) const;
    std::vector<double> get_double_list_or(const std::string& section, const std::string& key,
                                           const std::vector<double>& fallback) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace kpp
