#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "csrminer/config.hpp"
#include "csrminer/dataset.hpp"
#include "csrminer/synth.hpp"

namespace csrminer {

// Each command writes into `config.out` and returns the files it produced
// (relative path -> FNV-1a digest). Library errors are rethrown with the
// failing stage prefixed to the message; the code is kept.

using OutputDigests = std::map<std::string, std::string>;

struct ScoreSummary {
    std::size_t rows = 0;
    std::size_t skipped = 0;
    std::size_t months = 0;
};

/// Input columns: agent_id,month,kind,product_id,scores where `scores` holds
/// the space-separated 0..5 answers of one call. Calls are pooled per
/// (agent, month, kind). Bad rows are logged as row,code,message and skipped.
ScoreSummary score_calls(std::istream& in, std::ostream& out, std::ostream& log, bool split_met = false);

/// synthetic.csv and ground_truth.txt under `out`.
OutputDigests cmd_synth(const GeneratorConfig& generator, const std::filesystem::path& out);

/// Reads and cleans `config.input`, returning the dataset and the rejections.
CleanDataset load_dataset(const RunConfig& config, CleanResult* cleaned = nullptr);

OutputDigests cmd_clean(const RunConfig& config);
OutputDigests cmd_train(const RunConfig& config, const WarningSink& sink = {});
OutputDigests cmd_evaluate(const RunConfig& config, const WarningSink& sink = {});
OutputDigests cmd_sensitivity(const RunConfig& config, const WarningSink& sink = {});

/// Everything above plus manifest.json (config, its hash, seeds, input
/// digest, output digests).
OutputDigests cmd_run(const RunConfig& config, const WarningSink& sink = {});

/// The config recorded in a manifest written by cmd_run.
RunConfig config_from_manifest(const std::filesystem::path& manifest);

std::string file_digest(const std::filesystem::path& path);

}  // namespace csrminer
