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

#ifndef CONVSQL_VALUE_PTR_H_
#define CONVSQL_VALUE_PTR_H_

#include <memory>
#include <utility>

namespace convsql {

// Nullable owning pointer with value semantics: copies are deep and
// equality compares the pointees. Lets recursive AST nodes stay regular
// types.
template <typename T>
class ValuePtr {
 public:
  ValuePtr() = default;
  ValuePtr(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  ValuePtr(const ValuePtr &other)
      : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  ValuePtr(ValuePtr &&) noexcept = default;
  ValuePtr &operator=(const ValuePtr &other) {
    if (this != &other) {
      ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    }
    return *this;
  }
  ValuePtr &operator=(ValuePtr &&) noexcept = default;

  explicit operator bool() const { return ptr_ != nullptr; }
  T &operator*() { return *ptr_; }
  const T &operator*() const { return *ptr_; }
  T *operator->() { return ptr_.get(); }
  const T *operator->() const { return ptr_.get(); }
  T *get() { return ptr_.get(); }
  const T *get() const { return ptr_.get(); }

  friend bool operator==(const ValuePtr &a, const ValuePtr &b) {
    if (!a.ptr_ || !b.ptr_) return !a.ptr_ && !b.ptr_;
    return *a.ptr_ == *b.ptr_;
  }

 private:
  std::unique_ptr<T> ptr_;
};

}  // namespace convsql

#endif  // CONVSQL_VALUE_PTR_H_
