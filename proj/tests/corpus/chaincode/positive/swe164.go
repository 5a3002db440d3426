package main

import "fmt"

type Asset struct {
	ID string
}

func Describe(a *Asset) string {
	return fmt.Sprintf("asset at %p", a)
}
