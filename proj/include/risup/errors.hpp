// risup: link-level simulation of multi-RIS-aided multi-user uplinks
// Copyright (C) 2026 The risup authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISUP_ERRORS_HPP
#define RISUP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace risup
{

/// Invalid experiment description. Carries every field-level issue found,
/// each formatted as "<field>: <problem>".
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues))
    {
    }
    explicit ConfigError(const std::string& issue) : ConfigError(std::vector<std::string>{issue}) {}

    const std::vector<std::string>& issues() const { return issues_; }

  private:
    static std::string join(const std::vector<std::string>& issues)
    {
        std::string out;
        for (const auto& i : issues)
        {
            if (!out.empty())
                out += "; ";
            out += i;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

} // namespace risup

#endif
