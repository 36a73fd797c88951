#pragma once

#include "methodolint/bundle.hpp"
#include "methodolint/checks.hpp"
#include "methodolint/client.hpp"
#include "methodolint/concurrency.hpp"
#include "methodolint/config.hpp"
#include "methodolint/error.hpp"
#include "methodolint/eval.hpp"
#include "methodolint/gates.hpp"
#include "methodolint/mock_server.hpp"
#include "methodolint/pattern.hpp"
#include "methodolint/prompt.hpp"
#include "methodolint/python/lexer.hpp"
#include "methodolint/python/parser.hpp"
#include "methodolint/registry.hpp"
#include "methodolint/scan.hpp"
#include "methodolint/similarity.hpp"
#include "methodolint/verdict.hpp"
