#pragma once

#include "wcc/errors.hpp"
#include "wcc/limiter.hpp"

#include <string>

namespace wcc {

struct scheme_config
{
    int order = 3;               ///< Q in {2, 3, 4}; polynomial degree P = Q - 1
    double cfl = 0.3;
    bool weighted = true;        ///< apply the limiter (WCCS) or not (LCCS)
    bool characteristic = true;  ///< limit characteristic rather than conservative variables
    limiter_params limiter{};

    static auto default_cfl(int order) -> double
    {
        switch (order) {
        case 2:
            return 0.4;
        case 3:
            return 0.3;
        case 4:
            return 0.25;
        default:
            throw config_error("order must be 2, 3 or 4 (got " + std::to_string(order) + ")");
        }
    }

    void validate() const
    {
        (void)default_cfl(order);
        if (!(cfl > 0.0))
            throw config_error("CFL number must be positive");
        if (!(limiter.epsilon > 0.0))
            throw config_error("limiter epsilon must be positive");
        if (order >= 3 && limiter.alpha < 0.5)
            throw config_error("limiter alpha must be >= 1/2 for orders 3 and 4");
        if (!(limiter.alpha > 0.0))
            throw config_error("limiter alpha must be positive");
    }
};

} // namespace wcc
