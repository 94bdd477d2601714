// Copyright 2026 The sage-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sageforge/model/data.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace sageforge::model {

using nlohmann::json;

bool SetBinding::contains(const Tuple& t) const {
  for (const auto& m : members)
    if (m == t) return true;
  return false;
}

std::string tuple_key(const Tuple& t) {
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += t[i];
  }
  return out;
}

static Tuple split_key(const std::string& key) {
  Tuple out;
  std::string cur;
  for (char c : key) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

void validate_data(const DataBinding& data) {
  for (const auto& [name, set] : data.sets) {
    if (set.arity < 1)
      throw DataError("set '" + name + "' has arity " +
                      std::to_string(set.arity));
    std::set<Tuple> seen;
    for (const auto& m : set.members) {
      if ((int)m.size() != set.arity)
        throw DataError("set '" + name + "' member '" + tuple_key(m) +
                        "' has wrong arity");
      if (!seen.insert(m).second)
        throw DataError("set '" + name + "' member '" + tuple_key(m) +
                        "' repeated");
    }
  }
  for (const auto& [name, table] : data.params) {
    size_t arity = 0;
    bool first = true;
    for (const auto& [key, value] : table) {
      if (first) {
        arity = key.size();
        first = false;
      } else if (key.size() != arity) {
        throw DataError("param '" + name + "' keys have mixed arity");
      }
      if (!std::isfinite(value))
        throw DataError("param '" + name + "[" + tuple_key(key) +
                        "]' is not finite");
    }
  }
  for (const auto& [name, value] : data.scalars)
    if (!std::isfinite(value))
      throw DataError("scalar '" + name + "' is not finite");
}

DataBinding data_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DataError(std::string("bad data JSON: ") + e.what());
  }
  DataBinding out;
  try {
    if (j.contains("sets")) {
      for (auto& [name, arr] : j.at("sets").items()) {
        SetBinding sb;
        sb.name = name;
        for (auto& item : arr) {
          Tuple t;
          if (item.is_array()) {
            for (auto& comp : item) t.push_back(comp.get<std::string>());
          } else {
            t.push_back(item.get<std::string>());
          }
          sb.members.push_back(std::move(t));
        }
        sb.arity = sb.members.empty() ? 1 : (int)sb.members.front().size();
        out.sets.emplace(name, std::move(sb));
      }
    }
    if (j.contains("params")) {
      for (auto& [name, table] : j.at("params").items()) {
        auto& dst = out.params[name];
        for (auto& [key, value] : table.items())
          dst[split_key(key)] = value.get<double>();
      }
    }
    if (j.contains("scalars")) {
      for (auto& [name, value] : j.at("scalars").items())
        out.scalars[name] = value.get<double>();
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("bad data JSON: ") + e.what());
  }
  validate_data(out);
  return out;
}

std::string data_to_json(const DataBinding& data) {
  json j;
  j["sets"] = json::object();
  for (const auto& [name, set] : data.sets) {
    json arr = json::array();
    for (const auto& m : set.members) {
      if (set.arity == 1) {
        arr.push_back(m[0]);
      } else {
        json t = json::array();
        for (const auto& comp : m) t.push_back(comp);
        arr.push_back(t);
      }
    }
    j["sets"][name] = arr;
  }
  j["params"] = json::object();
  for (const auto& [name, table] : data.params) {
    json obj = json::object();
    for (const auto& [key, value] : table) obj[tuple_key(key)] = value;
    j["params"][name] = obj;
  }
  j["scalars"] = json::object();
  for (const auto& [name, value] : data.scalars) j["scalars"][name] = value;
  return j.dump(2);
}

}  // namespace sageforge::model
