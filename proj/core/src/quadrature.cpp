#include "mmrefl/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

namespace mmrefl {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    }
    if (max_subdivisions < 8) {
        throw std::invalid_argument("QuadratureSpec: max_subdivisions >= 8 required");
    }
}

namespace {

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

// Nested integrals each need their own workspace; keep one per nesting depth
// per thread so the hot path does not allocate.
struct WorkspacePool {
    std::vector<Workspace> slots;
    std::size_t depth{0};
};

thread_local WorkspacePool pool;

class WorkspaceLease {
public:
    explicit WorkspaceLease(std::size_t size) {
        if (pool.slots.size() <= pool.depth) {
            pool.slots.emplace_back();
        }
        auto& slot = pool.slots[pool.depth];
        if (!slot || slot->limit < size) {
            slot.reset(gsl_integration_workspace_alloc(size));
        }
        ws_ = slot.get();
        ++pool.depth;
    }
    ~WorkspaceLease() { --pool.depth; }
    WorkspaceLease(const WorkspaceLease&) = delete;
    WorkspaceLease& operator=(const WorkspaceLease&) = delete;

    [[nodiscard]] gsl_integration_workspace* get() const { return ws_; }

private:
    gsl_integration_workspace* ws_{nullptr};
};

void disable_gsl_abort() {
    static std::once_flag once;
    std::call_once(once, [] { gsl_set_error_handler_off(); });
}

double trampoline(double x, void* params) {
    const auto& f = *static_cast<const Integrand*>(params);
    return f(x);
}

double run_qag(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    disable_gsl_abort();
    const auto limit = static_cast<std::size_t>(spec.max_subdivisions);
    WorkspaceLease lease(limit);
    gsl_function gf{&trampoline, const_cast<Integrand*>(&f)};
    double result = 0.0;
    double abserr = 0.0;
    const int status = gsl_integration_qag(&gf, a, b, spec.abs_tol, spec.rel_tol, limit,
                                           GSL_INTEG_GAUSS21, lease.get(), &result, &abserr);
    // GSL_EROUND means the requested tolerance is below what roundoff allows;
    // the estimate is still the best available.
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        std::ostringstream msg;
        msg << "quadrature did not converge on [" << a << ", " << b << "]: " << gsl_strerror(status)
            << " (achieved abs error " << abserr << ", requested rel " << spec.rel_tol << ")";
        throw QuadratureError(msg.str(), abserr);
    }
    return result;
}

}  // namespace

double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    if (a == b) {
        return 0.0;
    }
    return run_qag(f, a, b, spec);
}

double integrate_to_infinity(const Integrand& f, double a, const QuadratureSpec& spec, double scale) {
    const Integrand mapped = [&f, a, scale](double t) {
        const double one_minus = 1.0 - t;
        const double value = f(a + scale * t / one_minus);
        if (value == 0.0) {
            return 0.0;
        }
        return value * scale / (one_minus * one_minus);
    };
    return run_qag(mapped, 0.0, 1.0, spec);
}

}  // namespace mmrefl
