#include "slimfat/kernels.hpp"

#include <omp.h>

namespace slimfat {

int available_threads() noexcept { return omp_get_num_procs(); }

}  // namespace slimfat
