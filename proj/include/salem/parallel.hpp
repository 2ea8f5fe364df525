#pragma once

namespace salem {

/// Worker-count hint passed from the CLI into kernels. 0 means the OpenMP default.
/// Kernel results never depend on it.
struct Parallelism {
  int workers = 0;

  int resolved() const;
};

}  // namespace salem
