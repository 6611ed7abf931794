#pragma once

#include "statementnet/corpus.hpp"
#include "statementnet/date.hpp"
#include "statementnet/errors.hpp"
#include "statementnet/extract.hpp"
#include "statementnet/graph.hpp"
#include "statementnet/io.hpp"
#include "statementnet/lexicon.hpp"
#include "statementnet/pipeline.hpp"
#include "statementnet/segment.hpp"
#include "statementnet/tagging.hpp"
#include "statementnet/temporal.hpp"
#include "statementnet/text.hpp"
#include "statementnet/version.hpp"
