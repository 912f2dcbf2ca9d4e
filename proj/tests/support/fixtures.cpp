#include "fixtures.hpp"

#include <fstream>
#include <sstream>

#include "qpl/errors.hpp"
#include "qpl/schema.hpp"

namespace qpl::testing {

std::filesystem::path data_dir() { return QPL_TEST_DATA_DIR; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Database bundled_db(const std::string& db_id) { return load_database(data_dir() / db_id); }

std::string golden(const std::string& name) { return read_file(data_dir() / "golden" / name); }

std::vector<std::string> beatrix_qd() {
  return {
      "#1 = Scan the table country and retrieve the code and head of state of the country whose "
      "head of state is Beatrix",
      "#2 = Scan the table countrylanguage and retrieve the country codes, languages and if "
      "they're official",
      "#3 = Filter from #2 all the official languages and retrieve the country codes and languages",
      "#4 = Join #1 and #3 based on the matching country codes and retrieve the language spoken in "
      "the country whose head of state is Beatrix",
  };
}

Database toy_world() {
  return database_from_csv(load_schema(data_dir() / "world_1" / "schema.json"),
                           {{"country",
                             "Code,Name,Continent,Region,Population,HeadOfState\n"
                             "NLD,Netherlands,Europe,Western Europe,15864000,Beatrix\n"
                             "BEL,Belgium,Europe,Western Europe,10239000,Albert II\n"
                             "USA,United States,North America,North America,278357000,George W. Bush\n"},
                            {"countrylanguage",
                             "CountryCode,Language,IsOfficial,Percentage\n"
                             "NLD,Dutch,T,95.6\n"
                             "NLD,Fries,F,3.7\n"
                             "BEL,French,T,32.6\n"
                             "USA,English,T,86.2\n"}});
}

Database toy_museum() {
  return database_from_csv(load_schema(data_dir() / "museum_visit" / "schema.json"),
                           {{"Visitor",
                             "ID,Name,Level_of_membership,Age\n"
                             "1,Ann,1,30\n"
                             "2,Bob,2,40\n"},
                            {"Visit",
                             "Museum_ID,visitor_ID,Num_of_Ticket,Total_spent\n"
                             "1,1,1,10\n"
                             "2,1,1,5\n"
                             "1,2,3,99\n"}});
}

Database toy_documents() {
  return database_from_csv(load_schema(data_dir() / "cre_Doc_Template_Mgt" / "schema.json"),
                           {{"Documents",
                             "Document_ID,Template_ID,Document_Name,Document_Description,Other_Details\n"
                             "10,1,a,x,\n"
                             "11,1,b,y,\n"
                             "12,2,c,z,\n"}});
}

std::string squash(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

}  // namespace qpl::testing
