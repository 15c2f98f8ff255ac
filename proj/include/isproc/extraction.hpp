/*
 * Copyright 2026 The isproc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ISPROC_EXTRACTION_HPP_
#define ISPROC_EXTRACTION_HPP_

#include "isproc/pga.hpp"
#include "isproc/thread.hpp"

namespace isproc {

/// The thread produced by an instruction sequence.
///
/// Running off the end of a finite sequence, #0, and entering a cycle of
/// jumps all yield inaction (D).
ThreadSpec extract(const InstructionSeq& s);

}  // namespace isproc

#endif  // ISPROC_EXTRACTION_HPP_
