// Copyright 2026 The convsql Authors.
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

#include "httplib.h"
#include "json.hpp"

#include "convsql/errors.h"
#include "convsql/infer.h"

namespace convsql {

HttpGenerator::HttpGenerator(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

std::string HttpGenerator::EncodeRequest(const std::string &input) {
  nlohmann::ordered_json body;
  body["input"] = input;
  return body.dump();
}

std::string HttpGenerator::DecodeResponse(const std::string &body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error &e) {
    throw EndpointError(0, std::string("malformed response: ") + e.what());
  }
  auto it = j.find("output");
  if (!j.is_object() || it == j.end() || !it->is_string()) {
    throw EndpointError(0, "response lacks a string 'output' field");
  }
  return it->get<std::string>();
}

std::string HttpGenerator::Generate(const GenerationRequest &request) const {
  // One client per call keeps concurrent use free of shared state.
  httplib::Client client(base_url_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  auto response = client.Post("/generate", EncodeRequest(request.input), "application/json");
  if (!response) {
    throw EndpointError(request.turn_index, "transport error: " + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw EndpointError(request.turn_index, "HTTP status " + std::to_string(response->status) +
                                                ": " + response->body);
  }
  try {
    return DecodeResponse(response->body);
  } catch (const EndpointError &e) {
    throw EndpointError(request.turn_index, e.cause());
  }
}

}  // namespace convsql
