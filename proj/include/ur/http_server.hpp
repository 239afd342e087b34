// Copyright 2026 The Ur Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UR_HTTP_SERVER_HPP_
#define UR_HTTP_SERVER_HPP_

#include "httplib.h"
#include "ur/service.hpp"

namespace ur {

// Routes the /api endpoints to `service`, which must outlive `server`.
void RegisterRoutes(httplib::Server& server, GameService& service);

}  // namespace ur

#endif  // UR_HTTP_SERVER_HPP_
