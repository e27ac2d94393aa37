#pragma once
// Umbrella header for the scrapbook memory engine.

#include <scrapmem/chat_client.hpp>
#include <scrapmem/config.hpp>
#include <scrapmem/corpus.hpp>
#include <scrapmem/emgraph.hpp>
#include <scrapmem/embedding.hpp>
#include <scrapmem/engine.hpp>
#include <scrapmem/errors.hpp>
#include <scrapmem/eval.hpp>
#include <scrapmem/forgetting.hpp>
#include <scrapmem/pagebuilder.hpp>
#include <scrapmem/perception.hpp>
#include <scrapmem/policy.hpp>
#include <scrapmem/prompts.hpp>
#include <scrapmem/raster.hpp>
#include <scrapmem/retrieval.hpp>
#include <scrapmem/store.hpp>
#include <scrapmem/time.hpp>
