#pragma once

#include "diarykit/bigint.hpp"
#include "diarykit/diary.hpp"
#include "diarykit/errors.hpp"
#include "diarykit/graph.hpp"
#include "diarykit/oracle.hpp"
#include "diarykit/search.hpp"
#include "diarykit/state.hpp"
#include "diarykit/tangent.hpp"
#include "diarykit/words.hpp"
