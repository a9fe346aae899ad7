// Copyright 2026 The ptrack Authors
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

#ifndef PTRACK_TOOLS_COMMANDS_HPP_
#define PTRACK_TOOLS_COMMANDS_HPP_

namespace CLI {
class App;
}

namespace ptrack::tool {

// Each registers one subcommand; the callback does the work and throws
// ptrack::Error (runtime failure) or CLI::ParseError (usage).
void register_track(CLI::App& app);
void register_eval(CLI::App& app);
void register_synth(CLI::App& app);
void register_bench(CLI::App& app);

}  // namespace ptrack::tool

#endif  // PTRACK_TOOLS_COMMANDS_HPP_
