package main

import "github.com/example/unvetted"

func Score(s string) int {
	return unvetted.Score(s)
}
