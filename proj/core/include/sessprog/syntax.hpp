// Copyright 2026 The sessprog Authors
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

// Free names, free variables and capture-avoiding substitution.

#ifndef SESSPROG_SYNTAX_HPP_
#define SESSPROG_SYNTAX_HPP_

#include <optional>
#include <set>
#include <string>

#include "sessprog/ast.hpp"

namespace sessprog {

// Generates identifiers of the form base_N that are not in the used set.
// Every generated name is added to the set.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}

  std::string fresh(const std::string& base);
  void reserve(const std::string& id) { used_.insert(id); }
  void reserve_all(const std::set<std::string>& ids) { used_.insert(ids.begin(), ids.end()); }
  bool taken(const std::string& id) const { return used_.count(id) != 0; }

 private:
  std::set<std::string> used_;
};

std::set<Name> free_names(const Proc& p);
std::set<std::string> free_proc_vars(const Proc& p);
// Channel identifiers of the free endpoints of p.
std::set<std::string> free_channels(const Proc& p);
// Every identifier appearing in p, bound or free (names, binders, process
// variables). Used to seed a NameSupply.
std::set<std::string> all_identifiers(const Proc& p);

// p[replacement/var]. nullopt when a restriction in p would capture the
// replacement endpoint.
std::optional<Proc> subst_name(const Proc& p, const std::string& var,
                               const Value& replacement);
// p[q/x]. nullopt when a binder of p (restriction, input or recursion)
// would capture a free name or process variable of q.
std::optional<Proc> subst_proc(const Proc& p, const std::string& x, const Proc& q);

// Variants that alpha-rename offending binders instead of failing.
Proc subst_name_renaming(const Proc& p, const std::string& var, const Value& replacement,
                         NameSupply& supply);
Proc subst_proc_renaming(const Proc& p, const std::string& x, const Proc& q,
                         NameSupply& supply);

// Renames the free endpoints of channel `from` to channel `to`. `to` must
// not be bound anywhere inside p.
Proc rename_channel(const Proc& p, const std::string& from, const std::string& to);

// Alpha-renames binders so that no two binders share a name and no binder
// shares a name with a free name or free process variable. Names that are
// already unique are kept.
Proc freshen(const Proc& p);

// Session-type variables.
std::set<std::string> free_type_vars(const Type& t);
// Capture-avoiding t[s/var].
Type subst_type(const Type& t, const std::string& var, const Type& s);

}  // namespace sessprog

#endif  // SESSPROG_SYNTAX_HPP_
