#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "seqcmf/baseline.hpp"
#include "seqcmf/confseq.hpp"
#include "seqcmf/core.hpp"
#include "seqcmf/dgp.hpp"
#include "seqcmf/engine.hpp"
#include "seqcmf/regress.hpp"

namespace seqcmf {

// ---------------------------------------------------------------------------
// Text formats

/// Shortest-round-trip-safe decimal (17 significant digits, trailing zeros
/// trimmed), so re-reading a written value reproduces it exactly.
std::string format_real(double v);

/// Header for the stream formats: `x1,...,xd,y` or `x1,...,xd,a,y,pi1`.
std::string stream_header(StreamKind kind, std::size_t dim);
void write_observation(std::ostream& os, const Observation& obs);

/// Reads the CSV stream formats. The header fixes kind and dimension;
/// malformed rows raise ParseError with their 1-based line number.
class CsvStream final : public ObservationStream {
public:
    explicit CsvStream(std::istream& in);

    StreamKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    std::optional<Observation> next() override;

private:
    std::istream& in_;
    StreamKind kind_ = StreamKind::Cmf;
    std::size_t dim_ = 0;
    std::size_t line_ = 1;
};

inline constexpr const char* kRecordsHeader = "t,phi,weight,psi_bar,v_hat,lower_bound,rejected";
inline constexpr const char* kBinsHeader = "t,bin,n,mean,half_width,rejected";
inline constexpr const char* kCdfHeader = "t,fraction_rejected,wilson_lo,wilson_hi";
inline constexpr const char* kCsHeader = "t,hull_lo,hull_hi,n_survivors";

void write_record(std::ostream& os, const StepRecord& rec);
void write_bin_record(std::ostream& os, const BinRecord& rec);

// ---------------------------------------------------------------------------
// Rejection-time CDF

struct CdfRow {
    std::size_t t = 0;
    double fraction_rejected = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
};

using CdfTable = std::vector<CdfRow>;

/// Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z = 1.96);

/// fraction(t) = #{n_f <= t} / R with Wilson 95% bounds; `grid` ascending.
CdfTable ecdf(const std::vector<std::optional<std::size_t>>& times, const std::vector<std::size_t>& grid);

void write_cdf(std::ostream& os, const CdfTable& table);

// ---------------------------------------------------------------------------
// Run settings

enum class Method { Gaavi, Binned };

Method parse_method(const std::string& name);
std::string to_string(Method m);

/// Everything a run needs. Mirrors the flat JSON config file; keys are the
/// TestConfig field names plus the regressor and harness keys listed in
/// settings_from_json().
struct Settings {
    TestConfig::Params test;
    RegressorOptions regressor;
    Method method = Method::Gaavi;

    // synthetic source
    Shape dgp = Shape::Null;
    std::optional<double> delta;
    std::optional<double> concentration;
    std::size_t dim = 10;

    std::size_t horizon = 10000;
    std::size_t replicates = 100;
    std::size_t checkpoint_stride = 1;
    std::size_t grid_stride = 50;
    std::size_t bins = 8;
    std::size_t threads = 0; // 0: hardware concurrency
    bool early_stop = false;

    /// Constant null; defaults to 0.5 for conditional-mean streams and 0 for
    /// treatment-effect streams.
    std::optional<double> null_value;
    double null_bound = 1.0;
    /// Range of the raw outcome y.
    double outcome_lo = 0.0;
    double outcome_hi = 1.0;

    // confidence-sequence grid; defaults to the outcome range
    std::optional<double> grid_lo;
    std::optional<double> grid_hi;
    std::size_t grid_points = 101;

    ShapeSpec shape_spec() const;
    double null_for(StreamKind kind) const;
    TestConfig config() const { return TestConfig(test); }
};

/// Unknown keys raise InvalidInput, wrong types OutOfRange(key).
Settings settings_from_json(const nlohmann::json& j, Settings base = {});
nlohmann::json settings_to_json(const Settings& s);

// ---------------------------------------------------------------------------
// Factories

/// Nuisances built from the settings. With RegressorKind::Oracle the truth
/// of `oracle_dgp` is used (tau = m(zeta), v = m(1-m)/(c+1)); without a
/// known DGP the oracle is rejected.
Nuisances make_nuisances(const Settings& s, StreamKind kind, std::size_t dim, std::uint64_t seed,
                         const ShapeSpec* oracle_dgp = nullptr);

// ---------------------------------------------------------------------------
// Monte Carlo

struct SimulationResult {
    std::vector<std::uint64_t> seeds;
    std::vector<std::optional<std::size_t>> n_f;
    CdfTable cdf;
};

/// Seed of replicate r: mix_seed(base, r).
std::uint64_t replicate_seed(std::uint64_t base, std::size_t r);

/// First rejection time of replicate r on the configured synthetic DGP.
std::optional<std::size_t> run_replicate(const Settings& s, std::size_t r);

/// CDF grid: grid_stride, 2 grid_stride, ..., always ending at horizon.
std::vector<std::size_t> cdf_grid(std::size_t horizon, std::size_t stride);

/// R replicates on a bounded worker pool; output is ordered by replicate
/// index and independent of the thread count.
SimulationResult simulate(const Settings& s);

void write_times(std::ostream& os, const SimulationResult& r);

// ---------------------------------------------------------------------------
// Single-stream analysis

struct StreamSummary {
    std::optional<std::size_t> n_f;
    std::size_t t_consumed = 0;
    nlohmann::json to_json(const Settings& s, StreamKind kind) const;
};

/// Runs the configured method over at most `horizon` observations of
/// `stream`. Rows are written every checkpoint_stride steps and at the last
/// step: StepRecords (kRecordsHeader) for the sequential test, a snapshot of
/// every bin (kBinsHeader) for the binned baseline.
StreamSummary run_stream(ObservationStream& stream, StreamKind kind, std::size_t dim, const Settings& s,
                         std::ostream& out);

struct CsSummary {
    std::size_t t_consumed = 0;
    Survivors survivors;
    nlohmann::json to_json(const Settings& s, StreamKind kind) const;
};

/// Grid confidence sequence over constant nulls; one CSV row per checkpoint.
CsSummary run_cs(ObservationStream& stream, StreamKind kind, std::size_t dim, const Settings& s, std::ostream& out);

/// Writes the first `horizon` observations of replicate r's synthetic stream.
void dump_replicate_stream(const Settings& s, std::size_t r, std::ostream& os);

} // namespace seqcmf
