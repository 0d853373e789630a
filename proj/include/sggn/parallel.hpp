#ifndef SGGN_PARALLEL_HPP
#define SGGN_PARALLEL_HPP

namespace sggn {

// Thread-count control for the OpenMP kernels. set_threads(0) restores the
// hardware default. With any fixed thread count the kernels are bit
// deterministic: every parallel region partitions work statically and
// floating-point partial results are combined in a fixed order.
void set_threads(int n);
int thread_count();

}  // namespace sggn

#endif  // SGGN_PARALLEL_HPP
