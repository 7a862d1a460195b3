#pragma once

#include <stdexcept>
#include <string>

namespace evident {

// One error type for the whole library; the code tells callers which
// contract was violated, the message carries the details.
class Error : public std::runtime_error {
public:
    enum class Code {
        invalid_frame,
        negative_mass,
        mass_on_empty_set,
        sum_not_one,
        subset_out_of_range,
        frame_mismatch,
        total_conflict,
        empty_list,
        alpha_out_of_range,
        self_edge,
        unreadable_input,
        write_failure,
        corrupt_snapshot,
        version_mismatch,
        bad_spec,
    };

    Error(Code code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Code code() const noexcept { return code_; }

private:
    Code code_;
};

}  // namespace evident
