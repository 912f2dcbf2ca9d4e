#pragma once

// Shared fixtures: bundled data paths, golden plan texts and toy databases.

#include <filesystem>
#include <map>
#include <string>

#include "qpl/database.hpp"
#include "qpl/plan.hpp"

namespace qpl::testing {

std::filesystem::path data_dir();
std::string read_file(const std::filesystem::path& path);

/// Bundled database directory `tests/data/<db_id>`.
Database bundled_db(const std::string& db_id);

// Golden texts under tests/data/golden.
std::string golden(const std::string& name);

inline constexpr const char* kBeatrixQpl =
    "#1 = Scan Table [country] Predicate [HeadOfState = 'Beatrix'] \n"
    "     Output [Code, HeadOfState]\n"
    "#2 = Scan Table [countrylanguage] Output [CountryCode, Language, IsOfficial]\n"
    "#3 = Filter [#2] Predicate [IsOfficial = 'T'] Output [CountryCode, Language]\n"
    "#4 = Join [#1, #3] Predicate [#3.CountryCode = #1.Code] Output [#3.Language]\n";

inline constexpr const char* kBeatrixSql =
    "SELECT T2.Language\n"
    "FROM country AS T1\n"
    "JOIN countrylanguage AS T2 ON T1.Code  =  T2.CountryCode\n"
    "WHERE T1.HeadOfState  =  'Beatrix' AND T2.IsOfficial  =  'T'\n";

inline constexpr const char* kTemplateCountQpl =
    "#1 = Scan Table [ Documents ] Output [ Template_ID ]\n"
    "#2 = Aggregate [ #1 ] GroupBy [ Template_ID ] Output [ COUNT(*) AS Count , Template_ID ]\n";

inline constexpr const char* kMuseumSpendQpl =
    "#1 = Scan Table [ visitor ] Predicate [ Level_of_membership = 1 ] Output [ ID ]\n"
    "#2 = Scan Table [ visit ] Output [ visitor_ID , Total_spent ]\n"
    "#3 = Join [ #1, #2 ] Predicate [ #1.ID = #2.visitor_ID ] Output [ #2.Total_spent ]\n"
    "#4 = Aggregate [ #3 ] Output [ SUM(Total_spent) AS Sum_Total_spent ]\n";

/// Four QD steps of the Beatrix plan, continuation lines joined.
std::vector<std::string> beatrix_qd();

/// Three countries, one headed by Beatrix with exactly one official language.
Database toy_world();
/// Visitor{(1, level 1), (2, level 2)}, Visit{(1, 10), (1, 5), (2, 99)}.
Database toy_museum();
/// Documents with templates {1, 1, 2}.
Database toy_documents();

/// Collapses every run of whitespace to one space and trims both ends.
std::string squash(std::string_view text);

}  // namespace qpl::testing
